"""
Partitions, typed partitions, Young diagrams, strips, box relations and signed
permutations of the groups S_n, W_n (type C) and the even subgroup of W_n (type D).

Partitions are plain tuples in canonical form (weakly decreasing, no zeros), so
they can be used directly as dictionary keys.

>>> conjugate((4, 3, 3, 2))
(4, 4, 3, 1)
>>> SignedPermutation.from_string("3,-1,2,5,4", Group.C).length
4
"""

__all__ = [
    "Partition", "Box", "Group", "Flavor", "StripKind", "BOX", "TypedPartition",
    "SignedPermutation", "make_partition", "parse_partition", "format_partition",
    "weight", "length", "conjugate", "is_k_strict", "contains", "diagram",
    "skew_boxes", "strip_kind", "is_horizontal_strip", "is_vertical_strip",
    "add_horizontal_strips", "remove_vertical_strips", "partitions",
    "k_strict_partitions", "typed_partitions", "fits_rectangle", "relation_value",
    "box_related", "components", "parse_label", "format_label", "code_and_shape_A",
    "shape_C", "shape_D", "grassmannian_bijection", "grassmannian_inverse",
    "is_k_grassmannian", "index_function",
]

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from schubertine.errors import PreconditionError

# a weakly decreasing tuple of positive integers
Partition = tuple[int, ...]

# generator index of the type D reflection s_□; 0 is s_0 in type C
BOX = -1


class Box(NamedTuple):
    row: int
    col: int


class Group(str, Enum):
    A = "A"
    C = "C"
    D = "D"


class Flavor(str, Enum):
    K = "k"
    K_PRIME = "k-prime"


class StripKind(str, Enum):
    NOT_CONTAINED = "not-contained"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    NEITHER = "neither"


# ─────────────────────────────────────────────
# Partitions
# ─────────────────────────────────────────────
def make_partition(parts: Iterable[int]) -> Partition:
    """Canonical form of a weakly decreasing sequence, trailing zeros dropped."""
    parts = tuple(int(p) for p in parts)
    for i, p in enumerate(parts):
        if p < 0:
            raise PreconditionError("partition", f"Negative part {p} in {parts}")
        if i > 0 and parts[i - 1] < p:
            raise PreconditionError(
                "partition", f"Parts of {parts} are not weakly decreasing"
            )
    return tuple(p for p in parts if p > 0)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    try:
        return make_partition(int(p) for p in text.split(","))
    except ValueError as e:
        if isinstance(e, PreconditionError):
            raise
        raise PreconditionError("partition", f"Cannot parse partition {text!r}")


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)


def weight(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return sum(1 for p in lam if p > 0)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= c) for c in range(1, lam[0] + 1))


def is_k_strict(lam: Partition, k: int) -> bool:
    return all(not (lam[i] > k and lam[i] == lam[i + 1]) for i in range(len(lam) - 1))


def part(lam: Partition, i: int) -> int:
    """The i-th part, 1-indexed, zero past the end."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def contains(outer: Partition, inner: Partition) -> bool:
    return len(inner) <= len(outer) and all(
        inner[i] <= outer[i] for i in range(len(inner))
    )


def diagram(lam: Partition) -> frozenset[Box]:
    return frozenset(Box(r, c) for r, p in enumerate(lam, 1) for c in range(1, p + 1))


def skew_boxes(outer: Partition, inner: Partition) -> list[Box]:
    return sorted(
        Box(r, c)
        for r, p in enumerate(outer, 1)
        for c in range(part(inner, r) + 1, p + 1)
    )


def is_horizontal_strip(outer: Partition, inner: Partition) -> bool:
    """outer/inner has at most one box in each column."""
    if not contains(outer, inner):
        return False
    return all(part(outer, i + 1) <= part(inner, i) for i in range(1, len(outer)))


def is_vertical_strip(outer: Partition, inner: Partition) -> bool:
    """outer/inner has at most one box in each row."""
    if not contains(outer, inner):
        return False
    return all(outer[i] - part(inner, i + 1) <= 1 for i in range(len(outer)))


def strip_kind(lam: Partition, mu: Partition) -> StripKind:
    """Classify mu/lam; an empty or single-box strip reports HORIZONTAL."""
    if not contains(mu, lam):
        return StripKind.NOT_CONTAINED
    if is_horizontal_strip(mu, lam):
        return StripKind.HORIZONTAL
    if is_vertical_strip(mu, lam):
        return StripKind.VERTICAL
    return StripKind.NEITHER


def add_horizontal_strips(lam: Partition, p: int) -> Iterator[Partition]:
    """All mu containing lam with mu/lam a horizontal strip of p boxes."""
    rows = len(lam) + 1

    def _fill(i: int, remaining: int, acc: list[int]) -> Iterator[Partition]:
        if i == rows:
            if remaining == 0:
                yield tuple(p for p in acc if p > 0)
            return
        low = part(lam, i + 1)
        high = low + remaining if i == 0 else min(part(lam, i), low + remaining)
        for new in range(high, low - 1, -1):
            acc.append(new)
            yield from _fill(i + 1, remaining - (new - low), acc)
            acc.pop()

    yield from _fill(0, p, [])


def remove_vertical_strips(lam: Partition, max_col: Optional[int] = None) -> Iterator[Partition]:
    """All nu inside lam with lam/nu a vertical strip lying in columns <= max_col."""
    rows = [
        i
        for i in range(len(lam))
        if max_col is None or lam[i] <= max_col
    ]
    for size in range(len(rows) + 1):
        for chosen in combinations(rows, size):
            nu = list(lam)
            for i in chosen:
                nu[i] -= 1
            if all(nu[i] >= nu[i + 1] for i in range(len(nu) - 1)):
                yield tuple(p for p in nu if p > 0)


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def k_strict_partitions(n: int, k: int) -> Iterator[Partition]:
    return (lam for lam in partitions(n) if is_k_strict(lam, k))


def typed_partitions(n: int, k: int) -> Iterator["TypedPartition"]:
    for lam in k_strict_partitions(n, k):
        if k == 0:
            yield TypedPartition(lam, 0, 1)
        elif k in lam:
            yield TypedPartition(lam, k, 1)
            yield TypedPartition(lam, k, 2)
        else:
            yield TypedPartition(lam, k, 0)


def fits_rectangle(lam: Partition, rows: int, cols: int) -> bool:
    return length(lam) <= rows and part(lam, 1) <= cols


@dataclass(frozen=True, order=True)
class TypedPartition:
    """A k-strict partition with a type in {0, 1, 2}; type 0 iff no part equals k."""

    parts: Partition
    k: int
    type: int

    def __post_init__(self):
        object.__setattr__(self, "parts", make_partition(self.parts))
        if self.k < 0:
            raise PreconditionError("k >= 0", f"Level k must be nonnegative, got {self.k}")
        if not is_k_strict(self.parts, self.k):
            raise PreconditionError(
                "k-strict", f"{format_partition(self.parts)} is not {self.k}-strict"
            )
        if self.k == 0:
            if self.type != 1:
                raise PreconditionError(
                    "typed", f"Level zero typed partitions have type 1, got {self.type}"
                )
        elif self.k in self.parts:
            if self.type not in (1, 2):
                raise PreconditionError(
                    "typed",
                    f"{format_partition(self.parts)} has a part equal to {self.k}; type must be 1 or 2",
                )
        elif self.type != 0:
            raise PreconditionError(
                "typed",
                f"{format_partition(self.parts)} has no part equal to {self.k}; type must be 0",
            )

    @property
    def label(self) -> str:
        return f"{format_partition(self.parts)}:{self.type}"

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def ell_k(self) -> int:
        """Number of parts strictly greater than k."""
        return sum(1 for p in self.parts if p > self.k)

    @classmethod
    def parse(cls, text: str, k: int) -> "TypedPartition":
        text = text.strip()
        if ":" in text:
            body, _, t = text.partition(":")
            try:
                type_ = int(t)
            except ValueError:
                raise PreconditionError("typed", f"Cannot parse type in {text!r}")
            return cls(parse_partition(body), k, type_)
        lam = parse_partition(text)
        if k == 0:
            return cls(lam, 0, 1)
        if k in lam:
            raise PreconditionError(
                "typed", f"{text!r} has a part equal to k={k}; a ':1' or ':2' suffix is required"
            )
        return cls(lam, k, 0)

    def __str__(self) -> str:
        return self.label


Label = Union[Partition, TypedPartition]


def parse_label(text: str, k: int, typed: bool) -> Label:
    return TypedPartition.parse(text, k) if typed else parse_partition(text)


def format_label(label: Label) -> str:
    if isinstance(label, TypedPartition):
        return label.label
    return format_partition(label)


# ─────────────────────────────────────────────
# Box relations and connectivity
# ─────────────────────────────────────────────
def relation_value(box: Box, k: int, flavor: Flavor = Flavor.K) -> int:
    """Doubled diagonal statistic: 2(|c-k-1|+r) or |2c-2k-1|+2r."""
    if flavor == Flavor.K:
        return 2 * abs(box.col - k - 1) + 2 * box.row
    return abs(2 * box.col - 2 * k - 1) + 2 * box.row


def box_related(b1: Box, b2: Box, k: int, flavor: Flavor = Flavor.K) -> bool:
    return relation_value(b1, k, flavor) == relation_value(b2, k, flavor)


def components(boxes: Iterable[Box]) -> list[list[Box]]:
    """Connected components under sharing an edge or a vertex."""
    remaining = set(boxes)
    found = []
    while remaining:
        start = min(remaining)
        remaining.discard(start)
        stack, comp = [start], [start]
        while stack:
            r, c = stack.pop()
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    nb = Box(r + dr, c + dc)
                    if nb in remaining:
                        remaining.discard(nb)
                        stack.append(nb)
                        comp.append(nb)
        found.append(sorted(comp))
    return sorted(found)


# ─────────────────────────────────────────────
# Signed permutations
# ─────────────────────────────────────────────
@dataclass(frozen=True)
class SignedPermutation:
    """
    A (signed) permutation in one-line notation. The group acts on the right by
    positions: s_i swaps positions i, i+1; s_0 negates position 1; s_□ sends
    (w1, w2, ...) to (-w2, -w1, ...).
    """

    window: tuple[int, ...]
    group: Group = Group.C

    def __post_init__(self):
        window = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "group", Group(self.group))
        if sorted(abs(v) for v in window) != list(range(1, len(window) + 1)):
            raise PreconditionError(
                "signed permutation", f"{window} is not a signed permutation of 1..{len(window)}"
            )
        negatives = sum(1 for v in window if v < 0)
        if self.group == Group.A and negatives:
            raise PreconditionError("group A", f"{window} has negative entries")
        if self.group == Group.D and negatives % 2:
            raise PreconditionError(
                "group D", f"{window} has an odd number of sign changes"
            )

    @classmethod
    def identity(cls, n: int, group: Group = Group.C) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)), group)

    @classmethod
    def from_string(cls, text: str, group: Group = Group.C) -> "SignedPermutation":
        try:
            window = tuple(int(v) for v in text.replace(" ", "").split(",") if v)
        except ValueError:
            raise PreconditionError("signed permutation", f"Cannot parse {text!r}")
        return cls(window, group)

    @classmethod
    def longest(cls, n: int, group: Group) -> "SignedPermutation":
        if group == Group.A:
            return cls(tuple(range(n, 0, -1)), group)
        if group == Group.C:
            return cls(tuple(-i for i in range(1, n + 1)), group)
        # (-1,...,-n) for even n, (1,-2,...,-n) for odd n
        first = 1 if n % 2 else -1
        return cls((first,) + tuple(-i for i in range(2, n + 1)), group)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.window)

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        """Value at position i, extended by fixed points and w(-i) = -w(i)."""
        if i < 0:
            return -self(-i)
        return self.window[i - 1] if i <= self.n else i

    def extended(self, n: int) -> "SignedPermutation":
        if n <= self.n:
            return self
        return SignedPermutation(self.window + tuple(range(self.n + 1, n + 1)), self.group)

    def trimmed(self, min_n: int = 1) -> "SignedPermutation":
        window = list(self.window)
        while len(window) > min_n and window[-1] == len(window):
            window.pop()
        return SignedPermutation(tuple(window), self.group)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        n = max(self.n, other.n)
        return SignedPermutation(tuple(self(other(i)) for i in range(1, n + 1)), self.group)

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for i, v in enumerate(self.window, 1):
            inv[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation(tuple(inv), self.group)

    def generators(self) -> list[int]:
        if self.group == Group.A:
            return list(range(1, self.n))
        if self.group == Group.C:
            return list(range(0, self.n))
        return [BOX] + list(range(1, self.n)) if self.n >= 2 else []

    def right_mul(self, i: int) -> "SignedPermutation":
        w = list(self.extended(max(i + 1, 2 if i == BOX else 1)).window)
        if i == BOX:
            w[0], w[1] = -w[1], -w[0]
        elif i == 0:
            w[0] = -w[0]
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return SignedPermutation(tuple(w), self.group)

    def left_mul(self, i: int) -> "SignedPermutation":
        """s_i * w, acting on values."""

        def act(v: int) -> int:
            a, sign = abs(v), (1 if v > 0 else -1)
            if i == BOX:
                a, sign = {1: (2, -sign), 2: (1, -sign)}.get(a, (a, sign))
            elif i == 0:
                sign = -sign if a == 1 else sign
            elif a == i:
                a = i + 1
            elif a == i + 1:
                a = i
            return sign * a

        base = self.extended(max(i + 1, 2 if i == BOX else 1))
        return SignedPermutation(tuple(act(v) for v in base.window), self.group)

    @cached_property
    def length(self) -> int:
        w = self.window
        inv = sum(1 for i in range(self.n) for j in range(i + 1, self.n) if w[i] > w[j])
        if self.group == Group.A:
            return inv
        if self.group == Group.C:
            return inv + sum(-v for v in w if v < 0)
        return inv + sum(
            1 for i in range(self.n) for j in range(i + 1, self.n) if w[i] + w[j] < 0
        )

    def has_descent(self, i: int) -> bool:
        w = self.extended(2)
        if i == BOX:
            return w(1) + w(2) < 0
        if i == 0:
            return w(1) < 0
        return w(i) > w(i + 1)

    def descents(self) -> list[int]:
        """Right descents, in the order □ < 0 < 1 < 2 < ..."""
        return [i for i in self.generators() if self.has_descent(i)]

    def reduced_word(self) -> list[int]:
        """Lexicographically least reduced word, peeled from the left."""
        word, w = [], self
        while w.length > 0:
            for i in w.generators():
                v = w.left_mul(i)
                if v.length < w.length:
                    word.append(i)
                    w = v
                    break
        return word

    def is_increasing_up_to(self, k: int) -> bool:
        if self.group == Group.D and k <= 1:
            return True
        return all(d >= k for d in self.descents() if d != BOX) and not (
            self.group == Group.D and self.has_descent(BOX)
        )

    def code(self) -> tuple[int, ...]:
        w = self.window
        return tuple(sum(1 for j in range(i + 1, self.n) if w[j] < w[i]) for i in range(self.n))


def code_and_shape_A(w: SignedPermutation) -> tuple[tuple[int, ...], Partition]:
    if w.group != Group.A:
        raise PreconditionError("group A", f"{w} is not a type A permutation")
    gamma = w.code()
    while len(gamma) > 1 and gamma[-1] == 0:
        gamma = gamma[:-1]
    return gamma, tuple(sorted((g for g in gamma if g > 0), reverse=True))


def _delta_conjugate(w: SignedPermutation) -> Partition:
    return conjugate(tuple(sorted((g for g in w.code() if g > 0), reverse=True)))


def _add(mu: Partition, nu: Partition) -> Partition:
    size = max(len(mu), len(nu))
    return tuple(part(mu, i) + part(nu, i) for i in range(1, size + 1))


def shape_C(w: SignedPermutation) -> tuple[Partition, Partition, Partition]:
    if w.group != Group.C:
        raise PreconditionError("group C", f"{w} is not a type C signed permutation")
    mu = tuple(sorted((-v for v in w.window if v < 0), reverse=True))
    nu = _delta_conjugate(w)
    return mu, nu, _add(mu, nu)


def shape_D(w: SignedPermutation) -> tuple[Partition, Partition, Partition]:
    if w.group != Group.D:
        raise PreconditionError("group D", f"{w} is not a type D signed permutation")
    mu = make_partition(sorted((-v - 1 for v in w.window if v < 0), reverse=True))
    nu = _delta_conjugate(w)
    return mu, nu, _add(mu, nu)


# ─────────────────────────────────────────────
# Grassmannian elements
# ─────────────────────────────────────────────
def is_k_grassmannian(w: SignedPermutation, k: int) -> bool:
    allowed = {k}
    if w.group == Group.D and k == 1:
        allowed = {BOX, 1}
    elif w.group == Group.D and k == 0:
        allowed = {BOX}
    return set(w.descents()) <= allowed


def grassmannian_inverse(w: SignedPermutation, k: int) -> Label:
    """The (typed) partition attached to a k-Grassmannian element."""
    if not is_k_grassmannian(w, k):
        raise PreconditionError("k-Grassmannian", f"{w} is not {k}-Grassmannian in type {w.group.value}")
    tail = [w(k + i) for i in range(1, w.n - k + 1)]
    if w.group == Group.A:
        return code_and_shape_A(w)[1]
    if w.group == Group.C:
        return make_partition(
            k + abs(v) if v < 0 else sum(1 for r in range(1, k + 1) if w(r) > v)
            for v in tail
        )
    parts = make_partition(
        k - 1 + abs(v) if v < 0 else sum(1 for r in range(1, k + 1) if abs(w(r)) > v)
        for v in tail
    )
    if k == 0:
        return TypedPartition(parts, 0, 1)
    if k not in parts:
        return TypedPartition(parts, k, 0)
    return TypedPartition(parts, k, 1 if w(1) > 0 else 2)


def grassmannian_bijection(
    lam: Label, k: int, group: Group, n: Optional[int] = None
) -> SignedPermutation:
    """The k-Grassmannian element attached to a (typed) k-strict partition."""
    group = Group(group)
    if group == Group.D:
        if not isinstance(lam, TypedPartition):
            lam = TypedPartition(lam, k, 1 if k == 0 else 0)
        if lam.k != k:
            raise PreconditionError("typed", f"{lam} is typed at level {lam.k}, not {k}")
        parts, type_ = lam.parts, lam.type
    else:
        parts = lam.parts if isinstance(lam, TypedPartition) else make_partition(lam)
        type_ = None
        if group == Group.C and not is_k_strict(parts, k):
            raise PreconditionError("k-strict", f"{format_partition(parts)} is not {k}-strict")

    size = k + length(parts) + part(parts, 1) + 2
    if group == Group.A:
        if k < 1 and parts:
            raise PreconditionError("k >= 1", "Type A Grassmannian needs a descent position k >= 1")
        if length(parts) > k:
            raise PreconditionError(
                "rows", f"{format_partition(parts)} has more than k={k} rows"
            )
        left = [part(parts, k + 1 - i) + i for i in range(1, k + 1)]
        window = left + [v for v in range(1, size + 1) if v not in left]
        w = SignedPermutation(tuple(window), group)
    else:
        shift = k if group == Group.C else k - 1
        negatives = [p - shift for p in parts if p > k]
        small = conjugate(tuple(p for p in parts if p <= k))
        pool = [v for v in range(1, size + 1) if v not in negatives]
        left = sorted(pool[part(small, i) + k - i] for i in range(1, k + 1))
        rest = [v for v in pool if v not in left]
        signed_tail = [-v for v in negatives] + rest
        if group == Group.D:
            flips = len(negatives)
            if type_ == 2:
                left[0] = -left[0]
                flips += 1
            if flips % 2:
                if k >= 1 and type_ == 0:
                    left[0] = -left[0]
                else:
                    signed_tail[signed_tail.index(1)] = -1
        window = left + sorted(signed_tail)
        w = SignedPermutation(tuple(window), group)

    min_n = max(k, 2 if group == Group.D else 1, n or 0)
    w = w.trimmed(min_n)
    if n is not None and w.n > n:
        raise PreconditionError("window", f"{format_label(lam)} needs a window larger than n={n}")
    if n is not None:
        w = w.extended(n)
    check = grassmannian_inverse(w, k)
    expected = lam if group == Group.D else parts
    if check != expected:
        raise PreconditionError(
            "indexing", f"{format_label(lam)} is not indexed by a {k}-Grassmannian element of type {group.value}"
        )
    return w


def index_function(lam: Label, n: int, k: int, group: Group) -> tuple[int, ...]:
    group = Group(group)
    parts = lam.parts if isinstance(lam, TypedPartition) else lam
    cols = n + k if group == Group.C else n + k - 1
    if not fits_rectangle(parts, n - k, cols):
        raise PreconditionError(
            "rectangle", f"{format_label(lam)} does not fit in a {n - k}x{cols} rectangle"
        )
    if group == Group.C:
        return tuple(
            n + k + j - part(parts, j)
            - sum(1 for i in range(1, j) if part(parts, i) + part(parts, j) > 2 * k + j - i)
            for j in range(1, n - k + 1)
        )
    if not isinstance(lam, TypedPartition):
        lam = TypedPartition(parts, k, 1 if k == 0 else 0)
    seq = []
    for j in range(1, n - k + 1):
        lj = part(parts, j)
        prev = float("inf") if j == 1 else part(parts, j - 1)
        correction = 1 if lj > k or (lj == k < prev and (n + j + lam.type) % 2 == 1) else 0
        seq.append(
            n + k + j - lj
            - sum(1 for i in range(1, j) if part(parts, i) + lj >= 2 * k + j - i)
            - correction
        )
    return tuple(seq)
