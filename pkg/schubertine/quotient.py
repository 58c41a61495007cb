"""Normal forms in the rings A^(k), Gamma, Gamma', B^(k) and the free ring Lambda.

Every ring is presented by relations that rewrite a square (or the product
b_k b'_k) into monomials of strictly larger spread sum(part^2), so rewriting the
lowest-spread monomials first visits each monomial once.  Monomials that survive
are indexed by (typed) k-strict partitions.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Optional, Tuple

import sympy

from schubertine._logger import log_debug
from schubertine.combinat import (
    Label,
    TypedPartition,
    fits_rectangle,
    format_label,
    parse_label,
)
from schubertine.config import MAX_REWRITE_STEPS
from schubertine.errors import InternalError, PreconditionError
from schubertine.freering import (
    FreeElement,
    Generator,
    Monomial,
    b_monomial,
    determinant_formula,
    eta_level0,
    eta_star_expand,
    gen,
    plain_evaluation,
    theta_polynomial,
    u_to_b,
)


class RingKind(str, Enum):
    LAMBDA = "Lambda"
    A = "A"
    GAMMA = "Gamma"
    GAMMA_PRIME = "GammaPrime"
    B = "B"


@dataclass(frozen=True)
class RingDescriptor:
    kind: RingKind
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", RingKind(self.kind))
        if self.k < 0:
            raise PreconditionError("k >= 0", f"Ring level must be nonnegative, got {self.k}")
        if self.kind in (RingKind.LAMBDA, RingKind.GAMMA, RingKind.GAMMA_PRIME) and self.k:
            object.__setattr__(self, "k", 0)

    @classmethod
    def parse(cls, text: str) -> "RingDescriptor":
        text = text.strip()
        for kind in (RingKind.A, RingKind.B):
            if text.startswith(f"{kind.value}(") and text.endswith(")"):
                return cls(kind, int(text[2:-1]))
        return cls(RingKind(text))

    def __str__(self) -> str:
        if self.kind in (RingKind.A, RingKind.B):
            return f"{self.kind.value}({self.k})"
        return self.kind.value

    @property
    def families(self) -> frozenset[str]:
        if self.kind in (RingKind.LAMBDA, RingKind.A):
            return frozenset({"u"})
        if self.kind == RingKind.GAMMA:
            return frozenset({"c"})
        if self.kind == RingKind.GAMMA_PRIME or self.k == 0:
            return frozenset({"b"})
        return frozenset({"b", "b'"})

    @property
    def typed(self) -> bool:
        return self.kind in (RingKind.B, RingKind.GAMMA_PRIME)

    @property
    def level(self) -> int:
        return self.k if self.kind in (RingKind.A, RingKind.B) else 0

    @property
    def basis_name(self) -> str:
        return {
            RingKind.LAMBDA: "schur",
            RingKind.A: "theta",
            RingKind.GAMMA: "theta",
            RingKind.GAMMA_PRIME: "eta",
            RingKind.B: "eta",
        }[self.kind]


LAMBDA = RingDescriptor(RingKind.LAMBDA)
GAMMA = RingDescriptor(RingKind.GAMMA)
GAMMA_PRIME = RingDescriptor(RingKind.GAMMA_PRIME)


def ring_A(k: int) -> RingDescriptor:
    return RingDescriptor(RingKind.A, k)


def ring_B(k: int) -> RingDescriptor:
    return RingDescriptor(RingKind.B, k)


# ─────────────────────────────────────────────
# Rewriting
# ─────────────────────────────────────────────
def _spread(m: Monomial) -> int:
    return sum(g.index**2 for g in m if g.family != "x")


def _square_rule(family: str, p: int, ring: RingDescriptor) -> FreeElement:
    """Right-hand side replacing g_p^2 (p above the level)."""
    if ring.kind in (RingKind.A, RingKind.GAMMA):
        return sum(
            (gen(family, p + i) * gen(family, p - i) * (2 if i % 2 else -2) for i in range(1, p + 1)),
            FreeElement(),
        )
    k = ring.level
    return sum(
        (gen("b", p + i) * u_to_b(p - i, k) * (1 if i % 2 else -1) for i in range(1, p + 1)),
        FreeElement(),
    )


def _mixed_rule(k: int) -> FreeElement:
    """Right-hand side replacing b_k b'_k."""
    return sum(
        (gen("b", k + i) * gen("b", k - i) * (1 if i % 2 else -1) for i in range(1, k + 1)),
        FreeElement(),
    )


def _violation(
    m: Monomial, ring: RingDescriptor
) -> Optional[Tuple[Tuple[Generator, Generator], FreeElement]]:
    """The leftmost non-normal factor pair of m, with its replacement."""
    k = ring.level
    for pos in range(len(m) - 1):
        g, h = m[pos], m[pos + 1]
        if g == h and g.family in ("u", "c", "b") and g.index > k:
            return (g, h), _square_rule(g.family, g.index, ring)
    if ring.kind == RingKind.B and k >= 1:
        pair = (Generator("b", k), Generator("b'", k))
        if pair[0] in m and pair[1] in m:
            return pair, _mixed_rule(k)
    return None


def _without(m: Monomial, factors: Tuple[Generator, ...]) -> Monomial:
    rest = list(m)
    for g in factors:
        rest.remove(g)
    return tuple(rest)


def reduce(x: FreeElement, ring: RingDescriptor) -> FreeElement:
    """Normal form of x as a FreeElement; x-variables ride along as coefficients."""
    stray = x.families() - ring.families - {"x"}
    if stray:
        raise PreconditionError(
            "generator family", f"{sorted(stray)} generators do not belong to {ring}"
        )
    if ring.kind == RingKind.LAMBDA:
        return x

    pending: Dict[Monomial, object] = dict(x.terms)
    heap = [(_spread(m), m) for m in pending]
    heapq.heapify(heap)
    normal: Dict[Monomial, object] = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = pending.pop(m, 0)
        if not c:
            continue
        found = _violation(m, ring)
        if found is None:
            normal[m] = normal.get(m, 0) + c
            continue
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise InternalError(
                f"Rewriting in {ring} exceeded {MAX_REWRITE_STEPS} steps; last monomial {m}"
            )
        factors, replacement = found
        rest = FreeElement._raw({_without(m, factors): c})
        for m2, c2 in (rest * replacement).terms.items():
            if m2 not in pending:
                heapq.heappush(heap, (_spread(m2), m2))
                pending[m2] = c2
            else:
                pending[m2] = pending[m2] + c2
    log_debug(f"QuotientRing :: reduced {len(x)} terms in {ring} with {steps} rewrites")
    return FreeElement(normal)


def quotient_equal(x: FreeElement, y: FreeElement, ring: RingDescriptor) -> bool:
    return not reduce(x - y, ring)


# ─────────────────────────────────────────────
# Basis expansions
# ─────────────────────────────────────────────
def _label_key(label: Label) -> tuple:
    if isinstance(label, TypedPartition):
        return (label.weight, label.parts, label.type)
    return (sum(label), label, 0)


@dataclass
class BasisExpansion:
    ring: RingDescriptor
    basis: str
    coeffs: Dict[Label, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {lab: c for lab, c in self.coeffs.items() if c != 0}

    def __eq__(self, other) -> bool:
        if isinstance(other, dict):
            return self.coeffs == {lab: c for lab, c in other.items() if c}
        if not isinstance(other, BasisExpansion):
            return NotImplemented
        return (self.ring, self.basis, self.coeffs) == (other.ring, other.basis, other.coeffs)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: _label_key(t[0]))

    def truncated(self, rows: int, cols: int) -> "BasisExpansion":
        return BasisExpansion(
            self.ring,
            self.basis,
            {
                lab: c
                for lab, c in self.coeffs.items()
                if fits_rectangle(lab.parts if isinstance(lab, TypedPartition) else lab, rows, cols)
            },
        )

    def to_dict(self) -> dict:
        return {
            "ring": str(self.ring),
            "basis": self.basis,
            "coeffs": [{"label": format_label(lab), "c": str(c)} for lab, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BasisExpansion":
        ring = RingDescriptor.parse(data["ring"])
        return cls(
            ring,
            data["basis"],
            {
                parse_label(row["label"], ring.level, ring.typed): int(row["c"])
                for row in data["coeffs"]
            },
        )

    def __str__(self) -> str:
        symbol = {"schur": "s", "theta": "Theta", "eta": "Eta", "monomial": "m"}[self.basis]
        if not self.coeffs:
            return "0"
        pieces = []
        for lab, c in self.items():
            name = f"{symbol}[{format_label(lab)}]"
            pieces.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(pieces).replace("+ -", "- ")

    def to_latex(self) -> str:
        symbol = {"schur": "s", "theta": r"\Theta", "eta": r"H", "monomial": "m"}[self.basis]
        expr = sympy.Add(
            *(c * sympy.Symbol(f"{symbol}_{{{format_label(lab)}}}") for lab, c in self.items())
        )
        return sympy.latex(expr)


def monomial_label(m: Monomial, ring: RingDescriptor) -> Label:
    parts = tuple(sorted((g.index for g in m), reverse=True))
    if not ring.typed:
        return parts
    k = ring.level
    if k == 0:
        return TypedPartition(parts, 0, 1)
    families = {g.family for g in m if g.index == k}
    if "b'" in families:
        return TypedPartition(parts, k, 2)
    return TypedPartition(parts, k, 1 if "b" in families else 0)


def monomial_element(label: Label, ring: RingDescriptor) -> FreeElement:
    if isinstance(label, TypedPartition):
        if label.k == 0:
            return plain_evaluation("b")(label.parts)
        return b_monomial(label)
    family = next(iter(ring.families))
    return plain_evaluation(family)(label)


@lru_cache(maxsize=None)
def basis_element(label: Label, ring: RingDescriptor) -> FreeElement:
    """The Schur/theta/eta polynomial indexed by label, written in the ring's generators."""
    if ring.kind == RingKind.LAMBDA:
        return determinant_formula(label, "u")
    if ring.kind == RingKind.A:
        return theta_polynomial(label, ring.k)
    if ring.kind == RingKind.GAMMA:
        return theta_polynomial(label, 0, plain_evaluation("c"))
    if ring.level == 0:
        return eta_level0(label.parts if isinstance(label, TypedPartition) else label)
    return eta_star_expand(label)


@lru_cache(maxsize=None)
def _reduced_basis_element(label: Label, ring: RingDescriptor) -> FreeElement:
    return reduce(basis_element(label, ring), ring)


def normal_form(x: FreeElement, ring: RingDescriptor) -> BasisExpansion:
    """Coefficients of x in the (typed) k-strict monomial basis."""
    if "x" in x.families():
        raise PreconditionError(
            "no x variables", "normal_form needs scalar coefficients; use reduce for x-polynomials"
        )
    r = reduce(x, ring)
    coeffs: Dict[Label, int] = {}
    for m, c in r.terms.items():
        if not isinstance(c, int):
            raise PreconditionError("integral", f"Coefficient {c} of {m} is not an integer")
        coeffs[monomial_label(m, ring)] = c
    return BasisExpansion(ring, "monomial", coeffs)


def basis_expand(
    x: FreeElement,
    ring: RingDescriptor,
    rectangle: Optional[Tuple[int, int]] = None,
) -> BasisExpansion:
    """Coefficients of x in the Schur/theta/eta basis by unitriangular elimination."""
    remaining = normal_form(x, ring).coeffs
    result: Dict[Label, int] = {}
    steps = 0
    while remaining:
        label = min(remaining, key=_label_key)
        a = remaining[label]
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise InternalError(f"Basis elimination in {ring} did not terminate")
        element = _reduced_basis_element(label, ring)
        (lead_monomial,) = monomial_element(label, ring).terms
        lead = element.coefficient(lead_monomial)
        if lead != 1:
            raise InternalError(
                f"Basis element {format_label(label)} in {ring} has leading coefficient {lead}"
            )
        result[label] = result.get(label, 0) + a
        for m, c in element.terms.items():
            lab = monomial_label(m, ring)
            new = remaining.get(lab, 0) - a * c
            if new:
                remaining[lab] = new
            else:
                remaining.pop(lab, None)
    expansion = BasisExpansion(ring, ring.basis_name, result)
    if rectangle is not None:
        expansion = expansion.truncated(*rectangle)
    return expansion


def theta_basis_expand(x: FreeElement, k: int) -> BasisExpansion:
    return basis_expand(x, ring_A(k))


def eta_basis_expand(
    x: FreeElement, k: int, rectangle: Optional[Tuple[int, int]] = None
) -> BasisExpansion:
    return basis_expand(x, ring_B(k) if k >= 1 else GAMMA_PRIME, rectangle)


def schur_basis_expand(x: FreeElement) -> BasisExpansion:
    return basis_expand(x, LAMBDA)


def expansion_element(expansion: BasisExpansion) -> FreeElement:
    """Sum of coefficient times basis element, in the ring's generators."""
    result = FreeElement()
    for label, c in expansion.coeffs.items():
        result = result + basis_element(label, expansion.ring) * c
    return result
