"""
Pieri rules for Schur, theta and eta polynomials.

The relation lambda ->p mu of the symplectic and orthogonal rules is checked
directly on Young diagrams: a vertical strip is removed from the first k
columns, a horizontal strip is added, and every box of the surviving diagram is
matched against the new boxes through the k-relation (type C) or the
k'-relation (type D).
"""

from __future__ import annotations

__all__ = [
    "PieriTerm", "RelationWitness", "relation", "pieri_candidates_C",
    "pieri_candidates_D", "pieri_level0_D", "pieri_terms", "pieri_product",
    "k_horizontal_strip", "strip_witness",
]

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

from schubertine._logger import log_debug
from schubertine.combinat import (
    Box,
    Flavor,
    Group,
    Label,
    Partition,
    TypedPartition,
    add_horizontal_strips,
    box_related,
    components,
    conjugate,
    contains,
    format_label,
    is_horizontal_strip,
    is_k_strict,
    is_vertical_strip,
    make_partition,
    part,
    remove_vertical_strips,
    skew_boxes,
    weight,
)
from schubertine.errors import InternalError, PreconditionError
from schubertine.quotient import (
    GAMMA_PRIME,
    LAMBDA,
    BasisExpansion,
    ring_A,
    ring_B,
)


@dataclass(frozen=True)
class RelationWitness:
    """Boxes behind one instance of lambda ->p mu (or of a strip test)."""

    added: Tuple[Box, ...]
    removed: Tuple[Box, ...]
    mentioned: frozenset[Box]
    free: Tuple[Box, ...]
    free_components: Tuple[Tuple[Box, ...], ...]

    def to_dict(self) -> dict:
        return {
            "added": [list(b) for b in self.added],
            "removed": [list(b) for b in self.removed],
            "mentioned": [list(b) for b in sorted(self.mentioned)],
            "components": [[list(b) for b in comp] for comp in self.free_components],
        }


@dataclass(frozen=True)
class PieriTerm:
    mu: Label
    multiplicity: int
    witness: Optional[RelationWitness] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        data = {"label": format_label(self.mu), "c": str(self.multiplicity)}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


# ─────────────────────────────────────────────
# The relation lambda ->p mu
# ─────────────────────────────────────────────
def _intersection(lam: Partition, mu: Partition) -> Partition:
    return make_partition(min(part(lam, i), part(mu, i)) for i in range(1, len(lam) + 1))


def _match(box: Box, added: Tuple[Box, ...], k: int, flavor: Flavor) -> list[Box]:
    return [a for a in added if box_related(box, a, k, flavor)]


def relation(
    lam: Partition, mu: Partition, p: int, k: int, flavor: Flavor = Flavor.K
) -> Optional[RelationWitness]:
    """
    Test lambda ->p mu for k-strict lam and mu.

    Returns None when the relation fails, and otherwise the witness whose free
    boxes (new boxes right of column k not mentioned by the column conditions)
    drive the Pieri exponent.
    """
    if weight(mu) != weight(lam) + p or not is_k_strict(mu, k):
        return None
    nu = _intersection(lam, mu)
    if not is_vertical_strip(lam, nu) or not is_horizontal_strip(mu, nu):
        return None
    removed = tuple(skew_boxes(lam, nu))
    if any(b.col > k for b in removed):
        return None
    added = tuple(skew_boxes(mu, nu))

    lam_cols, mu_cols = conjugate(lam), conjugate(mu)
    mentioned: set[Box] = set()
    for c in range(1, k + 1):
        before, after = part(lam_cols, c), part(mu_cols, c)
        if after == before:
            if before == 0:
                continue
            related = _match(Box(before, c), added, k, flavor)
            if len(related) > 1:
                return None
            mentioned.update(related)
        elif after < before:
            # the removed boxes, then the new bottom box (row zero for an emptied column)
            probes = [Box(r, c) for r in range(after + 1, before + 1)] + [Box(after, c)]
            partners = []
            for probe in probes:
                related = _match(probe, added, k, flavor)
                if len(related) != 1:
                    return None
                partners.append(related[0])
            if len({b.row for b in partners}) > 1:
                return None
            mentioned.update(partners)

    free = tuple(b for b in added if b.col > k and b not in mentioned)
    return RelationWitness(
        added=added,
        removed=removed,
        mentioned=frozenset(mentioned),
        free=free,
        free_components=tuple(tuple(comp) for comp in components(free)),
    )


def _candidates(lam: Partition, p: int, k: int) -> list[Partition]:
    found = set()
    for nu in remove_vertical_strips(lam, max_col=k):
        for mu in add_horizontal_strips(nu, p + weight(lam) - weight(nu)):
            if is_k_strict(mu, k):
                found.add(mu)
    return sorted(found, reverse=True)


def _exponent_C(witness: RelationWitness, k: int) -> int:
    return sum(1 for comp in witness.free_components if all(b.col != k + 1 for b in comp))


def _exponent_D(witness: RelationWitness, p: int, k: int) -> int:
    count = len(witness.free_components)
    n = count if p <= k else count - 1
    if n < 0:
        raise InternalError(f"Negative orthogonal Pieri exponent for p={p}, k={k}")
    return n


# ─────────────────────────────────────────────
# Candidate enumeration
# ─────────────────────────────────────────────
def _check_level(p: int, k: int):
    if p < 0:
        raise PreconditionError("p >= 0", f"Pieri degree must be nonnegative, got {p}")
    if k < 0:
        raise PreconditionError("k >= 0", f"Level k must be nonnegative, got {k}")


def _terms_C(lam: Partition, p: int, k: int, witness: bool) -> list[PieriTerm]:
    _check_level(p, k)
    lam = make_partition(lam)
    if not is_k_strict(lam, k):
        raise PreconditionError("k-strict", f"{format_label(lam)} is not {k}-strict")
    terms = []
    for mu in _candidates(lam, p, k):
        w = relation(lam, mu, p, k, Flavor.K)
        if w is None:
            continue
        terms.append(PieriTerm(mu, 2 ** _exponent_C(w, k), w if witness else None))
    log_debug(f"Pieri :: u_{p} * Theta[{format_label(lam)}] at k={k}: {len(terms)} terms")
    return terms


def pieri_candidates_C(lam: Partition, p: int, k: int) -> list[Tuple[Partition, int]]:
    """All k-strict mu with lam ->p mu, paired with the exponent N(lam, mu)."""
    _check_level(p, k)
    lam = make_partition(lam)
    result = []
    for mu in _candidates(lam, p, k):
        w = relation(lam, mu, p, k, Flavor.K)
        if w is not None:
            result.append((mu, _exponent_C(w, k)))
    return result


def _mu_types(lam: TypedPartition, mu: Partition) -> list[int]:
    if lam.k not in mu:
        return [0]
    return [t for t in (1, 2) if lam.type + t != 3]


def _delta(lam: TypedPartition, mu: Partition, mu_type: int, p: int, n: int, prime: bool) -> Fraction:
    k = lam.k
    if p != k:
        return Fraction(1)
    if n > 0:
        return Fraction(1, 2)
    lam_cols, mu_cols = conjugate(lam.parts), conjugate(mu)
    c = sum(1 for col in range(1, k + 1) if part(mu_cols, col) <= part(lam_cols, col))
    d = c + max(lam.type, mu_type)
    return Fraction(int(d % 2 == (0 if prime else 1)))


def _terms_D(lam: TypedPartition, p: int, prime: bool, witness: bool) -> list[PieriTerm]:
    k = lam.k
    _check_level(p, k)
    if k == 0:
        raise PreconditionError("k >= 1", "Use pieri_level0_D for level zero")
    if prime and p != k:
        raise PreconditionError("p == k", f"b'_{k} only exists in degree {k}, got {p}")
    terms = []
    for mu in _candidates(lam.parts, p, k):
        w = relation(lam.parts, mu, p, k, Flavor.K_PRIME)
        if w is None:
            continue
        n = _exponent_D(w, p, k)
        for t in _mu_types(lam, mu):
            m = _delta(lam, mu, t, p, n, prime) * 2**n
            if m.denominator != 1:
                raise InternalError(
                    f"Half-integral Pieri coefficient {m} for {lam.label} -> {format_label(mu)}:{t}"
                )
            if m:
                terms.append(PieriTerm(TypedPartition(mu, k, t), int(m), w if witness else None))
    symbol = "b'" if prime else "b"
    log_debug(f"Pieri :: {symbol}_{p} * Eta[{lam.label}]: {len(terms)} terms")
    return terms


def pieri_candidates_D(
    lam: TypedPartition, p: int, k: int, prime: bool = False
) -> list[Tuple[TypedPartition, int]]:
    """Typed mu with lam ->p mu and their multiplicities delta * 2^N' (delta' when prime)."""
    if lam.k != k:
        raise PreconditionError("level", f"{lam.label} is typed for k={lam.k}, not k={k}")
    return [(t.mu, t.multiplicity) for t in _terms_D(lam, p, prime, witness=False)]


def _terms_level0_D(lam: Partition, p: int, witness: bool) -> list[PieriTerm]:
    _check_level(p, 0)
    lam = make_partition(lam)
    if not is_k_strict(lam, 0):
        raise PreconditionError("strict", f"{format_label(lam)} is not strict")
    if p == 0:
        return [PieriTerm(lam, 1)]
    terms = []
    for mu in add_horizontal_strips(lam, p):
        if not is_k_strict(mu, 0):
            continue
        strip = tuple(skew_boxes(mu, lam))
        comps = tuple(tuple(c) for c in components(strip))
        w = RelationWitness(strip, (), frozenset(), strip, comps) if witness else None
        terms.append(PieriTerm(mu, 2 ** (len(comps) - 1), w))
    return terms


def pieri_level0_D(lam: Partition, p: int) -> list[Tuple[Partition, int]]:
    """P_p * P_lam over strict mu: horizontal strips weighted by 2^(components - 1)."""
    return [(t.mu, t.multiplicity) for t in _terms_level0_D(lam, p, witness=False)]


# ─────────────────────────────────────────────
# Products in the special bases
# ─────────────────────────────────────────────
def _as_typed(lam: Union[Label, str], k: int) -> TypedPartition:
    if isinstance(lam, TypedPartition):
        if lam.k != k:
            raise PreconditionError("level", f"{lam.label} is typed for k={lam.k}, not k={k}")
        return lam
    if isinstance(lam, str):
        return TypedPartition.parse(lam, k)
    return TypedPartition.parse(format_label(make_partition(lam)), k)


def pieri_terms(
    lam: Union[Label, str],
    p: int,
    k: int,
    group: Group,
    prime: bool = False,
    witness: bool = False,
) -> list[PieriTerm]:
    group = Group(group)
    if group == Group.A:
        _check_level(p, 0)
        lam = make_partition(lam)
        return [PieriTerm(mu, 1) for mu in add_horizontal_strips(lam, p)]
    if group == Group.C:
        return _terms_C(make_partition(lam), p, k, witness)
    typed = _as_typed(lam, k)
    if k == 0:
        if prime:
            raise PreconditionError("k >= 1", "There is no b' generator at level zero")
        return [
            PieriTerm(TypedPartition(t.mu, 0, 1), t.multiplicity, t.witness)
            for t in _terms_level0_D(typed.parts, p, witness)
        ]
    return _terms_D(typed, p, prime, witness)


def pieri_product(
    lam: Union[Label, str],
    p: int,
    k: int,
    group: Group,
    prime: bool = False,
    rectangle: Optional[Tuple[int, int]] = None,
) -> BasisExpansion:
    """
    u_p * s_lam, u_p * Theta_lam or b_p * Eta_lam (b'_k with prime) in the
    matching basis, optionally truncated to a rows x cols rectangle.
    """
    group = Group(group)
    if group == Group.A:
        ring, basis = LAMBDA, "schur"
    elif group == Group.C:
        ring, basis = ring_A(k), "theta"
    else:
        ring, basis = (ring_B(k) if k >= 1 else GAMMA_PRIME), "eta"
    coeffs: dict = {}
    for term in pieri_terms(lam, p, k, group, prime):
        coeffs[term.mu] = coeffs.get(term.mu, 0) + term.multiplicity
    expansion = BasisExpansion(ring, basis, coeffs)
    if rectangle is not None:
        expansion = expansion.truncated(*rectangle)
    return expansion


# ─────────────────────────────────────────────
# k-horizontal strips
# ─────────────────────────────────────────────
def _strip_relation(outer: Partition, inner: Partition, k: int, flavor: Flavor) -> Optional[RelationWitness]:
    if not contains(outer, inner) or not is_k_strict(outer, k) or not is_k_strict(inner, k):
        return None
    big = weight(outer) + 2 * k + (1 if flavor == Flavor.K else 0)
    r = weight(outer) - weight(inner)
    return relation(outer, (big + r,) + inner, big, k, flavor)


def _bottom_right_boxes(outer: Partition, inner: Partition, k: int) -> Tuple[Box, ...]:
    """
    Right boxes of inner, row zero included, that are bottom boxes of outer,
    minus those (k-1)-related to a left box of outer/inner.
    """
    left = [b for b in skew_boxes(outer, inner) if b.col <= k]
    outer_cols, inner_cols = conjugate(outer), conjugate(inner)
    reach = max(part(outer, 1), 2 * k + len(outer)) + 1
    found = []
    for c in range(k + 1, reach + 1):
        depth = part(outer_cols, c)
        if part(inner_cols, c) != depth:
            continue
        box = Box(depth, c)
        if k >= 1 and any(box_related(box, b, k - 1, Flavor.K) for b in left):
            continue
        found.append(box)
    return tuple(found)


def strip_witness(
    outer: Label, inner: Label, k: int, flavor: Flavor = Flavor.K
) -> Optional[Tuple[int, RelationWitness]]:
    """The exponent n(outer/inner) with the boxes it was read from, or None."""
    flavor = Flavor(flavor)
    if flavor == Flavor.K:
        outer, inner = make_partition(outer), make_partition(inner)
        w = _strip_relation(outer, inner, k, flavor)
        if w is None:
            return None
        return _exponent_C(w, k), w

    outer, inner = _as_typed(outer, k), _as_typed(inner, k)
    if outer.type + inner.type == 3:
        return None
    w = _strip_relation(outer.parts, inner.parts, k, flavor)
    if w is None:
        return None
    boxes = _bottom_right_boxes(outer.parts, inner.parts, k)
    comps = tuple(tuple(c) for c in components(boxes))
    if not comps:
        raise InternalError(f"Empty bottom-box set for {outer.label}/{inner.label}")
    witness = RelationWitness(w.added, w.removed, w.mentioned, boxes, comps)
    return len(comps) - 1, witness


def k_horizontal_strip(
    outer: Label, inner: Label, k: int, flavor: Flavor = Flavor.K
) -> Optional[int]:
    """
    n(outer/inner) when outer/inner is a k-horizontal strip (flavor K) or a
    typed k'-horizontal strip (flavor K_PRIME), else None.

    >>> k_horizontal_strip((3,), (1,), 1)
    1
    >>> k_horizontal_strip((2, 1), (2, 1), 1)
    0
    """
    found = strip_witness(outer, inner, k, flavor)
    return None if found is None else found[0]
