"""Exact sparse commutative polynomials in graded generators, and raising operators.

A FreeElement maps monomials to exact coefficients:

  FreeElement.terms = Dict[Monomial, int | Fraction]
  Monomial          = Tuple[Generator, ...]   (sorted, repeated generators allowed)

Generators come in families u, c, b, b' (b-prime), e, h and x.  For the graded
families the index is the degree, index 0 is the unit and negative indices are
zero, so `gen("u", 0) == 1` and `gen("u", -2) == 0`.  For x the index is the
variable number and the degree is 1.

Example:
  u5*u2*u1 - 2*u6*u1^2  ->  {(u1, u2, u5): 1, (u1, u1, u6): -2}
"""

from __future__ import annotations

__all__ = [
    "Generator", "Monomial", "FreeElement", "gen", "RaisingOperatorSpec",
    "expand_operator", "raising_expand", "plain_evaluation", "schur_spec",
    "theta_spec", "eta_spec", "theta_polynomial", "schur_polynomial",
    "eta_star_expand", "eta_level0", "eta_polynomial", "u_to_b",
    "determinant_formula", "pfaffian_formula", "b_monomial",
]

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import groupby
from typing import Callable, Dict, Iterable, Iterator, NamedTuple, Optional, Tuple, Union

import sympy

from schubertine.combinat import (
    Partition,
    TypedPartition,
    conjugate,
    format_partition,
    is_k_strict,
    part,
)
from schubertine.errors import InternalError, PreconditionError

Coeff = Union[int, Fraction]

FAMILIES = ("u", "c", "b", "b'", "e", "h", "x")
# families whose index-0 generator is the unit
GRADED_UNIT = frozenset({"u", "c", "b", "e", "h"})


class Generator(NamedTuple):
    family: str
    index: int

    @property
    def degree(self) -> int:
        return 1 if self.family == "x" else self.index

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


Monomial = Tuple[Generator, ...]


def _normalize(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class FreeElement:
    """An exact linear combination of commutative monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Coeff]] = None):
        merged: Dict[Monomial, Coeff] = defaultdict(int)
        for m, c in (terms or {}).items():
            merged[tuple(sorted(m))] += c
        self.terms: Dict[Monomial, Coeff] = {
            m: _normalize(c) for m, c in merged.items() if c != 0
        }

    # ─────────────────────────────────────────────
    # Constructors
    # ─────────────────────────────────────────────
    @classmethod
    def zero(cls) -> "FreeElement":
        return cls()

    @classmethod
    def one(cls) -> "FreeElement":
        return cls({(): 1})

    @classmethod
    def const(cls, c: Coeff) -> "FreeElement":
        return cls({(): c}) if c != 0 else cls()

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Coeff]) -> "FreeElement":
        out = cls()
        out.terms = terms
        return out

    # ─────────────────────────────────────────────
    # Arithmetic
    # ─────────────────────────────────────────────
    @staticmethod
    def _lift(other) -> "FreeElement":
        if isinstance(other, FreeElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FreeElement.const(other)
        return NotImplemented

    def __add__(self, other) -> "FreeElement":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = _normalize(s)
            else:
                terms.pop(m, None)
        return FreeElement._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "FreeElement":
        return FreeElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "FreeElement":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "FreeElement":
        return (-self) + other

    def __mul__(self, other) -> "FreeElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FreeElement()
            return FreeElement._raw({m: _normalize(c * other) for m, c in self.terms.items()})
        if not isinstance(other, FreeElement):
            return NotImplemented
        terms: Dict[Monomial, Coeff] = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                terms[tuple(sorted(m1 + m2))] += c1 * c2
        return FreeElement._raw({m: _normalize(c) for m, c in terms.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FreeElement":
        result = FreeElement.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    # ─────────────────────────────────────────────
    # Inspection
    # ─────────────────────────────────────────────
    def coefficient(self, monomial: Iterable[Generator]) -> Coeff:
        return self.terms.get(tuple(sorted(monomial)), 0)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def families(self) -> set[str]:
        return {g.family for m in self.terms for g in m}

    def degrees(self) -> set[int]:
        return {sum(g.degree for g in m) for m in self.terms}

    def homogeneous_parts(self) -> Dict[int, "FreeElement"]:
        parts: Dict[int, Dict[Monomial, Coeff]] = defaultdict(dict)
        for m, c in self.terms.items():
            parts[sum(g.degree for g in m)][m] = c
        return {d: FreeElement._raw(t) for d, t in sorted(parts.items())}

    def substitute(self, image: Callable[[Generator], "FreeElement"]) -> "FreeElement":
        """Apply the ring homomorphism determined by its values on generators."""
        cache: Dict[Generator, FreeElement] = {}
        result = FreeElement()
        for m, c in self.terms.items():
            term = FreeElement.const(c)
            for g in m:
                if g not in cache:
                    cache[g] = image(g)
                term = term * cache[g]
            result = result + term
        return result

    # ─────────────────────────────────────────────
    # Rendering
    # ─────────────────────────────────────────────
    @staticmethod
    def _monomial_str(m: Monomial) -> str:
        if not m:
            return "1"
        return "*".join(
            f"{g}^{n}" if n > 1 else f"{g}"
            for g, n in ((g, sum(1 for _ in grp)) for g, grp in groupby(reversed(m)))
        )

    def _ordered(self) -> list[Tuple[Monomial, Coeff]]:
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(g.degree for g in t[0]), tuple(reversed(t[0]))),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self._ordered():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = self._monomial_str(m)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"FreeElement({self})"

    def to_dict(self) -> dict:
        rows = []
        for m, c in sorted(self.terms.items()):
            counts: Dict[str, int] = {}
            for g in m:
                counts[str(g)] = counts.get(str(g), 0) + 1
            rows.append({"c": str(c), "m": dict(sorted(counts.items()))})
        return {"terms": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "FreeElement":
        terms: Dict[Monomial, Coeff] = {}
        for row in data["terms"]:
            mono = []
            for name, e in row["m"].items():
                family = name.rstrip("0123456789")
                mono.extend([Generator(family, int(name[len(family):]))] * e)
            terms[tuple(sorted(mono))] = _normalize(Fraction(row["c"]))
        return cls(terms)

    def to_sympy(self) -> sympy.Expr:
        def sym(g: Generator) -> sympy.Symbol:
            name = "b'" if g.family == "b'" else g.family
            return sympy.Symbol(f"{name}_{{{g.index}}}")

        return sympy.Add(
            *(
                sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*(sym(g) for g in m))
                if isinstance(c, Fraction)
                else c * sympy.Mul(*(sym(g) for g in m))
                for m, c in self.terms.items()
            )
        )

    def to_latex(self) -> str:
        return sympy.latex(self.to_sympy())


def gen(family: str, index: int) -> FreeElement:
    """A single generator, with the unit and zero conventions applied."""
    if family not in FAMILIES:
        raise PreconditionError("generator family", f"Unknown generator family {family!r}")
    if family == "x":
        if index < 1:
            raise PreconditionError("x index", f"x variables are numbered from 1, got {index}")
        return FreeElement._raw({(Generator("x", index),): 1})
    if index < 0:
        return FreeElement()
    if index == 0 and family in GRADED_UNIT:
        return FreeElement.one()
    if index == 0:
        raise PreconditionError("b' index", "b' is only defined at a positive level")
    return FreeElement._raw({(Generator(family, index),): 1})


# ─────────────────────────────────────────────
# Raising operators
# ─────────────────────────────────────────────
Pair = Tuple[int, int]


@dataclass(frozen=True)
class RaisingOperatorSpec:
    """prod over numerator pairs of (1 - R_ij) times prod over denominator pairs of (1 + R_ij)^-1."""

    length: int
    numerator: frozenset[Pair]
    denominator: frozenset[Pair]

    def __post_init__(self):
        for i, j in self.numerator | self.denominator:
            if not 1 <= i < j <= self.length:
                raise PreconditionError(
                    "raising pair", f"Pair ({i},{j}) is not valid for length {self.length}"
                )

    @property
    def terminates_by_construction(self) -> bool:
        return self.denominator <= self.numerator


def _pair_series(in_num: bool, in_den: bool) -> Iterator[Tuple[int, int]]:
    """(m, coefficient of R^m) for one pair's factor."""
    yield 0, 1
    if in_num and not in_den:
        yield 1, -1
        return
    m = 1
    while True:
        sign = -1 if m % 2 else 1
        yield m, 2 * sign if in_num else sign
        m += 1


def expand_operator(
    spec: RaisingOperatorSpec, alpha: Tuple[int, ...], track: Optional[int] = None
) -> Dict[Tuple[Tuple[int, ...], bool], int]:
    """
    Apply the operator to an integer sequence. Returns the resulting sequences,
    keyed together with whether the monomial involved a pair touching slot `track`
    (1-indexed). Sequences with a negative entry are dropped.
    """
    if len(alpha) != spec.length:
        raise PreconditionError(
            "length", f"Sequence {alpha} does not have length {spec.length}"
        )
    pairs = sorted(spec.numerator | spec.denominator, key=lambda p: (-p[1], p[0]))
    states: Dict[Tuple[Tuple[int, ...], bool], int] = {(tuple(alpha), False): 1}
    for i, j in pairs:
        in_num, in_den = (i, j) in spec.numerator, (i, j) in spec.denominator
        new: Dict[Tuple[Tuple[int, ...], bool], int] = defaultdict(int)
        for (seq, touched), c in states.items():
            for m, coef in _pair_series(in_num, in_den):
                if seq[j - 1] - m < 0:
                    break
                s = list(seq)
                s[i - 1] += m
                s[j - 1] -= m
                t = touched or (m > 0 and track in (i, j))
                new[(tuple(s), t)] += c * coef
        states = {key: c for key, c in new.items() if c}
    return {key: c for key, c in states.items() if min(key[0], default=0) >= 0}


EvaluationRule = Callable[[Tuple[int, ...]], FreeElement]


def plain_evaluation(family: str = "u") -> EvaluationRule:
    def evaluate(seq: Tuple[int, ...]) -> FreeElement:
        result = FreeElement.one()
        for a in seq:
            result = result * gen(family, a)
            if not result:
                break
        return result

    return evaluate


def raising_expand(
    spec: RaisingOperatorSpec,
    alpha: Iterable[int],
    evaluate: Optional[EvaluationRule] = None,
    require_termination: bool = False,
) -> FreeElement:
    if require_termination and not spec.terminates_by_construction:
        raise PreconditionError(
            "termination", "Denominator pairs are not contained in the numerator pairs"
        )
    evaluate = evaluate or plain_evaluation("u")
    result = FreeElement()
    for (seq, _), c in expand_operator(spec, tuple(alpha)).items():
        result = result + evaluate(seq) * c
    return result


def schur_spec(n: int) -> RaisingOperatorSpec:
    pairs = frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return RaisingOperatorSpec(n, pairs, frozenset())


def theta_spec(lam: Partition, k: int, n: Optional[int] = None) -> RaisingOperatorSpec:
    if not is_k_strict(lam, k):
        raise PreconditionError("k-strict", f"{format_partition(lam)} is not {k}-strict")
    ell = len(lam)
    n = ell if n is None else n
    numerator = frozenset((i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1))
    denominator = frozenset(
        (i, j) for i, j in numerator if part(lam, i) + part(lam, j) > 2 * k + j - i
    )
    return RaisingOperatorSpec(max(n, ell), numerator, denominator)


def eta_spec(lam: Partition, k: int) -> RaisingOperatorSpec:
    ell = len(lam)
    numerator = frozenset((i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1))
    denominator = frozenset(
        (i, j) for i, j in numerator if part(lam, i) + part(lam, j) >= 2 * k + j - i
    )
    return RaisingOperatorSpec(ell, numerator, denominator)


def schur_polynomial(lam: Partition, family: str = "u") -> FreeElement:
    return raising_expand(schur_spec(len(lam)), lam, plain_evaluation(family))


def theta_polynomial(
    lam: Partition, k: int, evaluate: Optional[EvaluationRule] = None
) -> FreeElement:
    """Theta^(k)_lam in the u generators, or under another evaluation rule."""
    return raising_expand(theta_spec(lam, k), lam, evaluate)


# ─────────────────────────────────────────────
# Eta polynomials
# ─────────────────────────────────────────────
@lru_cache(maxsize=None)
def u_to_b(p: int, k: int) -> FreeElement:
    """u_p written in b generators at level k."""
    if p < 0:
        return FreeElement()
    if p == 0:
        return FreeElement.one()
    if k == 0 or p > k:
        return gen("b", p) * 2
    if p < k:
        return gen("b", p)
    return gen("b", k) + gen("b'", k)


def b_monomial(lam: TypedPartition) -> FreeElement:
    """b_lam, using b'_k for every part equal to k when the type is 2."""
    family_k = "b'" if lam.type == 2 else "b"
    result = FreeElement.one()
    for p in lam.parts:
        result = result * gen(family_k if p == lam.k else "b", p)
    return result


def _u_sequence_in_b(seq: Iterable[int], k: int, u_image: Callable[[int], FreeElement]) -> FreeElement:
    result = FreeElement.one()
    for a in seq:
        result = result * u_image(a)
        if not result:
            break
    return result


def eta_star_expand(
    lam: TypedPartition,
    u_image: Optional[Callable[[int], FreeElement]] = None,
    bk_images: Optional[Tuple[FreeElement, FreeElement]] = None,
) -> FreeElement:
    """
    2^{-l_k} R^lam * u_lam for a typed k-strict lam with k >= 1.

    `u_image(p)` gives the image of u_p (default: u_p in b generators) and
    `bk_images` the images of (b_k, b'_k); both are swapped out when the same
    operator is pushed through another model of the ring.
    """
    k = lam.k
    if k < 1:
        raise PreconditionError("k >= 1", "Use eta_level0 for level zero")
    u_image = u_image or (lambda p: u_to_b(p, k))
    b_k, b_prime_k = bk_images or (gen("b", k), gen("b'", k))
    parts = lam.parts
    r = parts.index(k) + 1 if lam.type != 0 else None
    total = FreeElement()
    for (seq, touched), c in expand_operator(eta_spec(parts, k), parts, track=r).items():
        if r is None:
            term = _u_sequence_in_b(seq, k, u_image) * c
        elif touched:
            term = _u_sequence_in_b(seq, k, u_image) * Fraction(c, 2)
        else:
            hat = seq[: r - 1] + seq[r:]
            lead = b_k if lam.type == 1 else b_prime_k
            term = lead * _u_sequence_in_b(hat, k, u_image) * c
        total = total + term
    result = total * Fraction(1, 2**lam.ell_k)
    if not result.is_integral:
        raise InternalError(
            f"Eta polynomial of {lam.label} at level {k} has a non-integral coefficient: {result}"
        )
    return result


def eta_level0(
    lam: Partition, u_image: Optional[Callable[[int], FreeElement]] = None
) -> FreeElement:
    """2^{-l} prod (1-R)/(1+R) u_lam with u_p = 2 b_p."""
    if not is_k_strict(lam, 0):
        raise PreconditionError("strict", f"{format_partition(lam)} is not strict")
    u_image = u_image or (lambda p: u_to_b(p, 0))
    ell = len(lam)
    pairs = frozenset((i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1))
    spec = RaisingOperatorSpec(ell, pairs, pairs)
    total = FreeElement()
    for (seq, _), c in expand_operator(spec, lam).items():
        total = total + _u_sequence_in_b(seq, 0, u_image) * c
    result = total * Fraction(1, 2**ell)
    if not result.is_integral:
        raise InternalError(f"P-polynomial of {format_partition(lam)} is not integral: {result}")
    return result


def eta_polynomial(lam: TypedPartition) -> FreeElement:
    if lam.k == 0:
        return eta_level0(lam.parts)
    return eta_star_expand(lam)


# ─────────────────────────────────────────────
# Determinants and Pfaffians
# ─────────────────────────────────────────────
def determinant_formula(lam: Partition, family: str = "u") -> FreeElement:
    """det(g_{lam_i+j-i}); for family e the conjugate partition indexes the rows."""
    if family not in ("u", "h", "e", "c", "b"):
        raise PreconditionError("family", f"Unsupported determinant family {family!r}")
    rows = conjugate(lam) if family == "e" else tuple(lam)
    n = len(rows)

    @lru_cache(maxsize=None)
    def minor(i: int, cols: frozenset[int]) -> FreeElement:
        if i == n:
            return FreeElement.one()
        result = FreeElement()
        for pos, j in enumerate(sorted(cols)):
            entry = gen(family, rows[i] + j - i)
            if not entry:
                continue
            sub = minor(i + 1, cols - {j})
            result = result + entry * sub * (-1 if pos % 2 else 1)
        return result

    return minor(0, frozenset(range(n)))


def pfaffian_formula(lam: Partition, k: int = 0) -> FreeElement:
    """Pfaffian of [Theta_{lam_i, lam_j}(u)], padding lam with a zero part when its length is odd."""
    if any(p <= k for p in lam):
        raise PreconditionError(
            "parts > k", f"Every part of {format_partition(lam)} must exceed k={k}"
        )
    if not is_k_strict(lam, 0):
        raise PreconditionError("strict", f"{format_partition(lam)} is not strict")
    seq = tuple(lam) + ((0,) if len(lam) % 2 else ())
    pair_spec = RaisingOperatorSpec(2, frozenset({(1, 2)}), frozenset({(1, 2)}))

    @lru_cache(maxsize=None)
    def entry(a: int, b: int) -> FreeElement:
        return raising_expand(pair_spec, (a, b))

    @lru_cache(maxsize=None)
    def pf(indices: Tuple[int, ...]) -> FreeElement:
        if not indices:
            return FreeElement.one()
        first, rest = indices[0], indices[1:]
        result = FreeElement()
        for pos, j in enumerate(rest):
            remaining = rest[:pos] + rest[pos + 1:]
            term = entry(seq[first], seq[j]) * pf(remaining)
            result = result + (term if pos % 2 == 0 else -term)
        return result

    return pf(tuple(range(len(seq))))
