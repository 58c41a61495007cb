"""
nilCoxeter algebras, Stanley functions, transition trees and Schubert polynomials.

Group elements of the nilCoxeter algebra are keyed by their one-line window at a
fixed rank n.  Products are computed letter by letter:

  xi_u * xi_i = xi_{u s_i}   if l(u s_i) = l(u) + 1
              = 0            otherwise

so the coefficient ring only needs + and *.  It is a TruncatedSeries for the
Stanley functions G, J, I and a FreeElement in x-variables for Schubert
polynomials.
"""

from __future__ import annotations

__all__ = [
    "NilCoxeterElement", "TreeNode", "TransitionTree", "factor_letters",
    "nilcoxeter_coefficient", "nilcoxeter_mixed_stanley", "transition_tree",
    "stanley_coefficients", "stanley_series_from_tree", "schubert_poly",
    "schubert_poly_compatible", "flag_coefficients", "borel_specialization",
    "reduced_words",
]

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

from schubertine._logger import log_debug
from schubertine.combinat import (
    BOX,
    Group,
    Label,
    SignedPermutation,
    TypedPartition,
    code_and_shape_A,
    format_label,
    grassmannian_inverse,
)
from schubertine.errors import InternalError, PreconditionError
from schubertine.freering import FreeElement, gen
from schubertine.series import (
    TruncatedSeries,
    p_tilde,
    q_tilde,
    schur_series,
    substitute_eta,
    substitute_theta,
)

Coeff = Union[TruncatedSeries, FreeElement]


# ─────────────────────────────────────────────
# nilCoxeter algebra
# ─────────────────────────────────────────────
class NilCoxeterElement:
    """A finite sum of coeff * xi_w over one group of rank n."""

    __slots__ = ("group", "n", "terms")

    def __init__(self, group: Group, n: int, terms: Optional[Dict[SignedPermutation, Coeff]] = None):
        self.group = Group(group)
        self.n = n
        self.terms: Dict[SignedPermutation, Coeff] = {}
        for w, c in (terms or {}).items():
            self._add(self.terms, self._key(w), c)

    def _key(self, w: SignedPermutation) -> SignedPermutation:
        if w.group != self.group:
            raise PreconditionError(
                "group", f"{w} lies in type {w.group.value}, not {self.group.value}"
            )
        w = w.trimmed(1).extended(self.n)
        if w.n > self.n:
            raise PreconditionError("rank", f"{w} does not lie in rank {self.n}")
        return w

    @staticmethod
    def _add(terms: Dict[SignedPermutation, Coeff], w: SignedPermutation, c: Coeff):
        total = terms[w] + c if w in terms else c
        if total:
            terms[w] = total
        else:
            terms.pop(w, None)

    @classmethod
    def unit(cls, group: Group, n: int, one: Coeff) -> "NilCoxeterElement":
        return cls(group, n, {SignedPermutation.identity(n, Group(group)): one})

    def times_factor(
        self,
        letter: int,
        t: Coeff,
        keep: Optional[Callable[[SignedPermutation], bool]] = None,
    ) -> "NilCoxeterElement":
        """self * (1 + t xi_letter), dropping group elements rejected by keep."""
        terms = dict(self.terms)
        for u, c in self.terms.items():
            v = u.right_mul(letter)
            if v.length != u.length + 1 or (keep is not None and not keep(v)):
                continue
            self._add(terms, v, c * t)
        out = NilCoxeterElement(self.group, self.n)
        out.terms = terms
        return out

    def __mul__(self, other: "NilCoxeterElement") -> "NilCoxeterElement":
        if (self.group, self.n) != (other.group, other.n):
            raise PreconditionError("group", "nilCoxeter elements of different groups")
        terms: Dict[SignedPermutation, Coeff] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                uv = u * v
                if uv.length == u.length + v.length:
                    self._add(terms, uv, a * b)
        out = NilCoxeterElement(self.group, self.n)
        out.terms = terms
        return out

    def coefficient(self, w: SignedPermutation) -> Optional[Coeff]:
        return self.terms.get(self._key(w))

    def to_dict(self) -> dict:
        return {
            "group": self.group.value,
            "n": self.n,
            "terms": [
                {"w": str(w), "coefficient": c.to_dict()}
                for w, c in sorted(self.terms.items(), key=lambda item: (item[0].length, item[0].window))
            ],
        }


def factor_letters(group: Group, n: int, start: int = 1) -> list[int]:
    """
    Letters of A_start(t), C(t) or D(t) in product order: the factor is
    (1 + t xi_a1)(1 + t xi_a2)... over the returned a1, a2, ...
    """
    group = Group(group)
    down = list(range(n - 1, start - 1, -1))
    if group == Group.A:
        return down
    if group == Group.C:
        return list(range(n - 1, 0, -1)) + [0, 0] + list(range(1, n))
    return list(range(n - 1, 0, -1)) + [BOX] + list(range(2, n))


def _prefix_filter(target: SignedPermutation) -> Callable[[SignedPermutation], bool]:
    cache: Dict[SignedPermutation, bool] = {}

    def keep(u: SignedPermutation) -> bool:
        if u not in cache:
            cache[u] = u.length + (u.inverse() * target).length == target.length
        return cache[u]

    return keep


def nilcoxeter_coefficient(
    target: SignedPermutation,
    factors: Sequence[Tuple[Sequence[int], Coeff]],
    one: Coeff,
    n: Optional[int] = None,
) -> Coeff:
    """<F_1(t_1) F_2(t_2) ..., target> for factors given as (letters, t)."""
    n = max(target.n, n or 0)
    target = target.extended(n)
    keep = _prefix_filter(target)
    element = NilCoxeterElement.unit(target.group, n, one)
    for letters, t in factors:
        for letter in letters:
            element = element.times_factor(letter, t, keep)
    found = element.coefficient(target)
    return one * 0 if found is None else found


def _nilcoxeter_rank(w: SignedPermutation, k: int) -> int:
    n = max(w.trimmed(1).n, k + 1)
    return max(n, 2) if w.group == Group.D else n


def nilcoxeter_mixed_stanley(
    w: SignedPermutation, k: int, m: int, degree: Optional[int] = None
) -> TruncatedSeries:
    """
    G_w(X) in m x-variables for type A; J_w(Z; X_k) and I_w(Z; X_k) with m
    z-variables for types C and D.  Default truncation is l(w).
    """
    degree = w.length if degree is None else degree
    if w.group == Group.A:
        n = max(w.trimmed(1).n, 2)
        factors = [
            (factor_letters(Group.A, n), TruncatedSeries.variable("x", j, 0, m, degree))
            for j in range(1, m + 1)
        ]
        return nilcoxeter_coefficient(w, factors, TruncatedSeries.const(1, 0, m, degree), n)
    if k < 0:
        raise PreconditionError("k >= 0", f"Level k must be nonnegative, got {k}")
    n = _nilcoxeter_rank(w, k)
    factors = [
        (factor_letters(w.group, n), TruncatedSeries.variable("z", j, m, k, degree))
        for j in range(1, m + 1)
    ] + [
        (factor_letters(Group.A, n), TruncatedSeries.variable("x", j, m, k, degree))
        for j in range(1, k + 1)
    ]
    return nilcoxeter_coefficient(w, factors, TruncatedSeries.const(1, m, k, degree), n)


# ─────────────────────────────────────────────
# Transition trees
# ─────────────────────────────────────────────
@dataclass
class TreeNode:
    w: SignedPermutation
    children: list["TreeNode"] = field(default_factory=list)
    shape: Optional[Label] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class TransitionTree:
    root: TreeNode
    k: int
    group: Group

    def nodes(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[TreeNode]:
        return [node for node in self.nodes() if node.is_leaf]

    def shape_counts(self) -> Dict[Label, int]:
        counts: Dict[Label, int] = {}
        for leaf in self.leaves():
            counts[leaf.shape] = counts.get(leaf.shape, 0) + 1
        return counts

    def to_dict(self) -> dict:
        ids: Dict[int, int] = {}
        nodes, edges = [], []
        for node in self.nodes():
            ids[id(node)] = len(ids)
            entry = {"id": ids[id(node)], "w": str(node.w.trimmed(1))}
            if node.is_leaf:
                shape = node.shape
                entry["shape"] = format_label(shape.parts if isinstance(shape, TypedPartition) else shape)
                entry["type"] = shape.type if isinstance(shape, TypedPartition) else None
            nodes.append(entry)
        for node in self.nodes():
            for child in node.children:
                edges.append([ids[id(node)], ids[id(child)]])
        return {"group": self.group.value, "k": self.k, "nodes": nodes, "edges": edges}


def _swap(w: SignedPermutation, i: int, j: int) -> SignedPermutation:
    """w t_ij."""
    window = list(w.extended(max(i, j)).window)
    window[i - 1], window[j - 1] = window[j - 1], window[i - 1]
    return SignedPermutation(tuple(window), w.group)


def _bar_swap(w: SignedPermutation, i: int, j: int) -> SignedPermutation:
    """w tbar_ij; tbar_ii negates position i."""
    window = list(w.extended(max(i, j)).window)
    if i == j:
        window[i - 1] = -window[i - 1]
    else:
        window[i - 1], window[j - 1] = -window[j - 1], -window[i - 1]
    return SignedPermutation(tuple(window), w.group)


def _largest_descent(w: SignedPermutation) -> Optional[int]:
    descents = w.descents()
    return descents[-1] if descents else None


def _shift(w: SignedPermutation) -> SignedPermutation:
    return SignedPermutation((1,) + tuple(v + 1 for v in w.window), w.group)


def _transition_data(w: SignedPermutation) -> Tuple[int, int, SignedPermutation]:
    r = _largest_descent(w)
    s = max(j for j in range(r + 1, w.n + 1) if w(j) < w(r))
    return r, s, _swap(w, r, s)


def _children_A(w: SignedPermutation) -> list[SignedPermutation]:
    for _ in range(w.length + w.n + 1):
        r, _s, v = _transition_data(w)
        found = [c for c in (_swap(v, i, r) for i in range(1, r)) if c.length == w.length]
        if found:
            return [c.trimmed(1) for c in found]
        w = _shift(w)
    raise InternalError(f"Transition step for {w} found no children after repeated shifting")


def _children_signed(w: SignedPermutation) -> list[SignedPermutation]:
    r, _s, v = _transition_data(w)
    found = [c for c in (_swap(v, i, r) for i in range(1, r)) if c.length == w.length]
    # tbar_rr only exists in type C
    bars = (i for i in range(1, v.n + 2) if w.group == Group.C or i != r)
    found += [c for c in (_bar_swap(v, i, r) for i in bars) if c.length == w.length]
    return [c.trimmed(1) for c in found]


def _is_leaf(w: SignedPermutation, k: int) -> bool:
    r = _largest_descent(w)
    if r is None:
        return True
    if w.group == Group.A:
        return len(w.descents()) == 1
    if w.group == Group.C:
        return r == k
    if k == 0:
        return r == BOX
    if k == 1:
        return r in (BOX, 1)
    return r == k


def _leaf_shape(w: SignedPermutation, k: int) -> Label:
    if w.group == Group.A:
        return code_and_shape_A(w)[1]
    if w.group == Group.D:
        return grassmannian_inverse(w.extended(max(k, 2)), k)
    return grassmannian_inverse(w.extended(max(k, 1)), k)


def _check_increasing(w: SignedPermutation, k: int):
    if w.group == Group.A:
        return
    if k < 0:
        raise PreconditionError("k >= 0", f"Level k must be nonnegative, got {k}")
    if not w.extended(max(k, 1)).is_increasing_up_to(k):
        raise PreconditionError("increasing up to k", f"{w} is not increasing up to {k}")


def transition_tree(w: SignedPermutation, k: int = 0) -> TransitionTree:
    """The (k-)transition tree of w; every leaf is (k-)Grassmannian."""
    _check_increasing(w, k)
    depth_cap = w.length + w.n + 1
    size = 0

    def build(v: SignedPermutation, depth: int) -> TreeNode:
        nonlocal size
        size += 1
        if depth > depth_cap * max(w.length, 1):
            raise InternalError(f"Transition tree of {w} did not terminate")
        if _is_leaf(v, k):
            return TreeNode(v, [], _leaf_shape(v, k))
        children = _children_A(v) if v.group == Group.A else _children_signed(v)
        return TreeNode(v, [build(c, depth + 1) for c in children])

    root = build(w.trimmed(1), 0)
    log_debug(f"TransitionTree :: {w} at k={k} has {size} nodes")
    return TransitionTree(root, k, w.group)


@lru_cache(maxsize=None)
def _cached_counts(w: SignedPermutation, k: int) -> Tuple[Tuple[Label, int], ...]:
    return tuple(transition_tree(w, k).shape_counts().items())


def _check_group(w: SignedPermutation, group: Optional[Group]) -> None:
    if group is not None and group != w.group:
        raise PreconditionError("group", f"{w} belongs to group {w.group.value}, not {group.value}")


def stanley_coefficients(
    w: SignedPermutation, k: int = 0, group: Optional[Group] = None
) -> Dict[Label, int]:
    """c^w, e^w or d^w: leaf-shape multiplicities of the transition tree."""
    _check_group(w, group)
    if w.group == Group.A:
        k = 0
    return dict(_cached_counts(w.trimmed(1), k))


def stanley_series_from_tree(
    w: SignedPermutation, k: int, m: int, degree: Optional[int] = None
) -> TruncatedSeries:
    """sum over leaves of the Schur, theta or eta series of the leaf shape."""
    degree = w.length if degree is None else degree
    if w.group == Group.A:
        total = TruncatedSeries(0, m, degree)
        for lam, c in stanley_coefficients(w).items():
            total = total + schur_series(lam, 0, m, degree) * c
        return total
    total = TruncatedSeries(m, k, degree)
    for lam, c in stanley_coefficients(w, k).items():
        if w.group == Group.C:
            total = total + substitute_theta(lam, k, m, degree) * c
        else:
            total = total + substitute_eta(lam, m, degree) * c
    return total


# ─────────────────────────────────────────────
# Schubert polynomials
# ─────────────────────────────────────────────
def _in_rank(w: SignedPermutation, n: int) -> SignedPermutation:
    w = w.trimmed(1)
    if w.n > n:
        raise PreconditionError("rank", f"{w} does not lie in rank {n}")
    return w.extended(n)


def _schubert_A(w: SignedPermutation, n: int) -> FreeElement:
    factors = [(factor_letters(Group.A, n, i), gen("x", i)) for i in range(1, n)]
    return nilcoxeter_coefficient(w, factors, FreeElement.one(), n)


@lru_cache(maxsize=None)
def reduced_words(w: SignedPermutation) -> Tuple[Tuple[int, ...], ...]:
    """All reduced words of w, lexicographically sorted."""
    if w.length == 0:
        return ((),)
    words = []
    for i in w.descents():
        words.extend(word + (i,) for word in reduced_words(w.right_mul(i).trimmed(1)))
    return tuple(sorted(words))


def _compatible_sequences(word: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Weakly increasing b with b_i <= a_i, strictly increasing where a_i < a_(i+1)."""

    def extend(i: int, low: int, acc: list) -> Iterator[Tuple[int, ...]]:
        if i == len(word):
            yield tuple(acc)
            return
        for b in range(low, word[i] + 1):
            acc.append(b)
            strict = i + 1 < len(word) and word[i] < word[i + 1]
            yield from extend(i + 1, b + 1 if strict else b, acc)
            acc.pop()

    return extend(0, 1, [])


def schubert_poly_compatible(w: SignedPermutation, n: int) -> FreeElement:
    """Type A Schubert polynomial read off monomial by monomial from compatible sequences."""
    if w.group != Group.A:
        raise PreconditionError("group A", f"{w} is not a type A permutation")
    w = _in_rank(w, n)
    total = FreeElement()
    for word in reduced_words(w.trimmed(1)):
        for b in _compatible_sequences(word):
            term = FreeElement.one()
            for i in b:
                term = term * gen("x", i)
            total = total + term
    return total


def _negated(element: FreeElement) -> FreeElement:
    """element(-X_n) for an x-polynomial."""
    return FreeElement({m: c * (-1) ** len(m) for m, c in element.terms.items()})


def schubert_poly(w: SignedPermutation, n: int, group: Optional[Group] = None) -> FreeElement:
    """
    Schubert polynomial of w in X_n: the nilCoxeter coefficient in type A and
    sum e^v_lam Q~_lam(X_n) S_pi(-X_n) (P~ and d^v in type D) over
    length-additive factorizations v pi = w with pi in S_n.
    """
    _check_group(w, group)
    w = _in_rank(w, n)
    if w.group == Group.A:
        return _schubert_A(w, n)
    total = FreeElement()
    for values in permutations(range(1, n + 1)):
        pi = SignedPermutation(values, w.group)
        v = w * pi.inverse()
        if v.length + pi.length != w.length:
            continue
        classical = _negated(_schubert_A(SignedPermutation(values, Group.A), n))
        for lam, c in stanley_coefficients(v, 0).items():
            parts = lam.parts if isinstance(lam, TypedPartition) else lam
            base = q_tilde(parts, n) if w.group == Group.C else p_tilde(parts, n)
            total = total + base * classical * c
    return total


# ─────────────────────────────────────────────
# Flag coefficients
# ─────────────────────────────────────────────
def _allowed_descents(a: Sequence[int], group: Group) -> set[int]:
    if group != Group.D:
        return set(a)
    allowed = set()
    for value in a:
        allowed |= {0: {BOX}, 1: {BOX, 1}}.get(value, {value})
    return allowed


def _right_weak_lower(w: SignedPermutation) -> list[SignedPermutation]:
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        for i in u.descents():
            v = u.right_mul(i).extended(w.n)
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return sorted(seen, key=lambda u: (u.length, u.window))


def _fixes(u: SignedPermutation, bound: int) -> bool:
    return all(u(i) == i for i in range(1, bound + 1)) and all(v > 0 for v in u.window)


def _factorizations(
    w: SignedPermutation, bounds: Sequence[int], first: bool
) -> Iterator[Tuple[SignedPermutation, ...]]:
    if len(bounds) == 1:
        if first or _fixes(w, bounds[0]):
            yield (w,)
        return
    for u in _right_weak_lower(w):
        if not first and not _fixes(u, bounds[0]):
            continue
        rest = u.inverse() * w
        if not _fixes(rest, bounds[1]):
            continue
        for tail in _factorizations(rest, bounds[1:], False):
            yield (u,) + tail


def flag_coefficients(w: SignedPermutation, a: Sequence[int]) -> Dict[Tuple[Label, ...], int]:
    """
    c^w, f^w or g^w indexed by partition sequences: sums over length-additive
    factorizations u_1...u_p = w of products of Stanley coefficients.
    """
    a = tuple(int(v) for v in a)
    group = w.group
    if not a or any(x >= y for x, y in zip(a, a[1:])):
        raise PreconditionError("a-sequence", f"{a} is not a nonempty increasing sequence")
    low = 1 if group == Group.A else 0
    if a[0] < low:
        raise PreconditionError("a-sequence", f"{a} must start at {low} or above in type {group.value}")
    w = w.trimmed(1).extended(a[-1] + 1)
    extra = set(w.descents()) - _allowed_descents(a, group)
    if extra:
        raise PreconditionError(
            "minimal coset representative",
            f"{w} has descents at {sorted(extra)} outside the allowed positions",
        )
    bounds = (0,) + a[:-1]
    coeffs: Dict[Tuple[Label, ...], int] = {}
    count = 0
    for factors in _factorizations(w, bounds, True):
        count += 1
        first = factors[0]
        maps = [stanley_coefficients(first, 0 if group == Group.A else a[0])]
        maps += [stanley_coefficients(SignedPermutation(u.window, Group.A)) for u in factors[1:]]
        for combo in product(*(m.items() for m in maps)):
            key = tuple(lam for lam, _ in combo)
            value = 1
            for _, c in combo:
                value *= c
            coeffs[key] = coeffs.get(key, 0) + value
    log_debug(f"FlagCoefficients :: {w} with a={a}: {count} factorizations")
    return {key: c for key, c in coeffs.items() if c}


def borel_specialization(coeffs: Dict[Tuple[Label, ...], int]) -> FreeElement:
    """Replace each one-row lam^j = (r) by x_j^r and every other shape by 0."""
    total = FreeElement()
    for key, c in coeffs.items():
        rows = [lam.parts if isinstance(lam, TypedPartition) else lam for lam in key]
        if any(len(parts) > 1 for parts in rows):
            continue
        term = FreeElement.const(c)
        for j, parts in enumerate(rows, 1):
            if parts:
                term = term * gen("x", j) ** parts[0]
        total = total + term
    return total
