"""
Tableaux as chains of partitions.

A tableau of shape outer/inner with entries 1..m is the chain
inner = lam^0 c lam^1 c ... c lam^m = outer, each layer lam^i/lam^(i-1)
holding the boxes filled with i.  Semistandard tableaux use horizontal strips,
k-tableaux use k-horizontal strips and typed k'-tableaux use typed
k'-horizontal strips; bitableaux add a marked filling of inner.
"""

from __future__ import annotations

__all__ = [
    "Tableau", "enumerate_tableaux_A", "enumerate_k_tableaux",
    "enumerate_typed_tableaux", "theta_series_via_bitableaux",
    "eta_series_via_bitableaux", "tableau_grouped_expansion", "contract_grouped",
]

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

from schubertine._logger import log_debug
from schubertine.combinat import (
    Box,
    Flavor,
    Group,
    Label,
    Partition,
    TypedPartition,
    conjugate,
    format_label,
    is_horizontal_strip,
    is_k_strict,
    make_partition,
    part,
    skew_boxes,
)
from schubertine.errors import PreconditionError
from schubertine.pieri import k_horizontal_strip
from schubertine.series import TruncatedSeries, schur_series


def _parts(label: Label) -> Partition:
    return label.parts if isinstance(label, TypedPartition) else label


@dataclass(frozen=True)
class Tableau:
    chain: Tuple[Label, ...]
    n: int = 0
    # rows of marked entries filling the inner shape
    marked: Tuple[Tuple[int, ...], ...] = ()

    @property
    def outer(self) -> Label:
        return self.chain[-1]

    @property
    def inner(self) -> Label:
        return self.chain[0]

    @property
    def content(self) -> Tuple[int, ...]:
        return tuple(
            sum(_parts(b)) - sum(_parts(a)) for a, b in zip(self.chain, self.chain[1:])
        )

    @property
    def marked_content(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for row in self.marked:
            for j in row:
                counts[j] = counts.get(j, 0) + 1
        return counts

    def filling(self) -> Dict[Box, str]:
        entries: Dict[Box, str] = {}
        for r, row in enumerate(self.marked, 1):
            for c, j in enumerate(row, 1):
                entries[Box(r, c)] = f"{j}'"
        for i, (a, b) in enumerate(zip(self.chain, self.chain[1:]), 1):
            circled = isinstance(b, TypedPartition) and b.type == 2
            for box in skew_boxes(_parts(b), _parts(a)):
                entries[box] = f"{i}o" if circled else str(i)
        return entries

    def rows(self) -> list[list[str]]:
        entries = self.filling()
        outer = _parts(self.outer)
        inner = _parts(self.inner)
        return [
            [entries.get(Box(r, c), "") for c in range(1, part(outer, r) + 1)]
            for r in range(1, len(outer) + 1)
            if part(outer, r) > 0 or part(inner, r) > 0
        ]

    def weight_series(self, m: int, k: int, degree: int) -> TruncatedSeries:
        """2^n z^content x^marked as a one-term series."""
        z = self.content + (0,) * (m - len(self.content))
        marked = self.marked_content
        x = tuple(marked.get(j, 0) for j in range(1, k + 1))
        return TruncatedSeries(m, k, degree, {z + x: 2**self.n})

    def to_dict(self) -> dict:
        return {
            "chain": [format_label(lab) for lab in self.chain],
            "rows": self.rows(),
            "n": self.n,
        }


# ─────────────────────────────────────────────
# Strip candidates
# ─────────────────────────────────────────────
def _subpartitions(outer: Partition) -> Iterator[Partition]:
    def fill(i: int, cap: int, acc: list) -> Iterator[Partition]:
        if i == len(outer):
            yield make_partition(acc)
            return
        for v in range(min(outer[i], cap), -1, -1):
            acc.append(v)
            yield from fill(i + 1, v, acc)
            acc.pop()

    return fill(0, part(outer, 1), [])


def _horizontal_inner(outer: Partition) -> list[Partition]:
    return [nu for nu in _subpartitions(outer) if is_horizontal_strip(outer, nu)]


@lru_cache(maxsize=None)
def _k_strip_inner(outer: Partition, k: int) -> Tuple[Tuple[Partition, int], ...]:
    found = []
    for nu in _subpartitions(outer):
        if not is_k_strict(nu, k):
            continue
        n = k_horizontal_strip(outer, nu, k, Flavor.K)
        if n is not None:
            found.append((nu, n))
    return tuple(found)


def _typings(parts: Partition, k: int) -> list[TypedPartition]:
    if k == 0:
        return [TypedPartition(parts, 0, 1)]
    if k in parts:
        return [TypedPartition(parts, k, 1), TypedPartition(parts, k, 2)]
    return [TypedPartition(parts, k, 0)]


@lru_cache(maxsize=None)
def _typed_strip_inner(outer: TypedPartition) -> Tuple[Tuple[TypedPartition, int], ...]:
    found = []
    for nu in _subpartitions(outer.parts):
        if not is_k_strict(nu, outer.k):
            continue
        for typed in _typings(nu, outer.k):
            n = k_horizontal_strip(outer, typed, outer.k, Flavor.K_PRIME)
            if n is not None:
                found.append((typed, n))
    return tuple(found)


# ─────────────────────────────────────────────
# Enumeration
# ─────────────────────────────────────────────
def enumerate_tableaux_A(lam: Partition, max_entry: int) -> Iterator[Tableau]:
    """Semistandard tableaux of shape lam with entries at most max_entry."""
    if max_entry < 0:
        raise PreconditionError("max_entry >= 0", f"Entry bound must be nonnegative, got {max_entry}")
    lam = make_partition(lam)

    def descend(current: Partition, steps: int) -> Iterator[Tuple[Partition, ...]]:
        if len(current) > steps:
            return
        if steps == 0:
            yield (current,)
            return
        for nu in _horizontal_inner(current):
            for chain in descend(nu, steps - 1):
                yield chain + (current,)

    for chain in descend(lam, max_entry):
        yield Tableau(chain)


def enumerate_k_tableaux(
    outer: Partition, k: int, m: int, inner: Optional[Partition] = None
) -> Iterator[Tableau]:
    """k-tableaux with entries 1..m of shape outer/inner (inner free when None)."""
    outer = make_partition(outer)
    if not is_k_strict(outer, k):
        raise PreconditionError("k-strict", f"{format_label(outer)} is not {k}-strict")

    def descend(current: Partition, steps: int) -> Iterator[Tuple[Tuple[Partition, ...], int]]:
        if steps == 0:
            if inner is None or current == inner:
                yield (current,), 0
            return
        for nu, n in _k_strip_inner(current, k):
            for chain, total in descend(nu, steps - 1):
                yield chain + (current,), total + n

    for chain, n in descend(outer, m):
        yield Tableau(chain, n)


def enumerate_typed_tableaux(
    outer: TypedPartition, m: int, inner: Optional[TypedPartition] = None
) -> Iterator[Tableau]:
    """Typed k'-tableaux with entries 1..m of shape outer/inner."""

    def descend(current: TypedPartition, steps: int) -> Iterator[Tuple[Tuple[TypedPartition, ...], int]]:
        if steps == 0:
            if inner is None or current == inner:
                yield (current,), 0
            return
        for nu, n in _typed_strip_inner(current):
            for chain, total in descend(nu, steps - 1):
                yield chain + (current,), total + n

    for chain, n in descend(outer, m):
        yield Tableau(chain, n)


def _marked_fillings(mu: Partition, k: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Fillings of mu by 1..k strictly increasing along rows, weakly down columns."""
    for t in enumerate_tableaux_A(conjugate(mu), k):
        columns = t.filling()
        yield tuple(
            tuple(int(columns[Box(c, r)]) for c in range(1, mu[r - 1] + 1))
            for r in range(1, len(mu) + 1)
        )


# ─────────────────────────────────────────────
# Tableau formulas
# ─────────────────────────────────────────────
def theta_series_via_bitableaux(lam: Partition, k: int, m: int) -> TruncatedSeries:
    """sum over k-bitableaux U of shape lam of 2^n(U) (zx)^c(U), unmarked entries <= m."""
    lam = make_partition(lam)
    degree = sum(lam)
    total = TruncatedSeries(m, k, degree)
    count = 0
    for t in enumerate_k_tableaux(lam, k, m):
        for marked in _marked_fillings(_parts(t.inner), k):
            total = total + Tableau(t.chain, t.n, marked).weight_series(m, k, degree)
            count += 1
    log_debug(f"Tableaux :: {count} {k}-bitableaux of shape {format_label(lam)}")
    return total


def eta_series_via_bitableaux(lam: TypedPartition, m: int, k: Optional[int] = None) -> TruncatedSeries:
    """
    sum over typed k'-bitableaux U of shape lam of 2^n(U) (zx)^c(U). The typed
    partition carries k; an explicit `k` must agree with it.
    """
    if k is not None and k != lam.k:
        raise PreconditionError("typed", f"{lam} is typed for k={lam.k}, not k={k}")
    k = lam.k
    degree = lam.weight
    if k == 0:
        q = theta_series_via_bitableaux(lam.parts, 0, m)
        return q.exact_div(2 ** len(lam.parts))
    total = TruncatedSeries(m, k, degree)
    count = 0
    for t in enumerate_typed_tableaux(lam, m):
        if t.inner.type == 2:
            continue
        for marked in _marked_fillings(t.inner.parts, k):
            total = total + Tableau(t.chain, t.n, marked).weight_series(m, k, degree)
            count += 1
    log_debug(f"Tableaux :: {count} typed {k}'-bitableaux of shape {lam.label}")
    return total


def tableau_grouped_expansion(
    lam: Label, k: int, group: Group, m: int
) -> Dict[Label, TruncatedSeries]:
    """mu -> sum over (typed) tableaux T of shape lam/mu of 2^n(T) z^c(T)."""
    group = Group(group)
    if group == Group.C:
        tableaux = enumerate_k_tableaux(make_partition(_parts(lam)), k, m)
        degree = sum(_parts(lam))
    elif group == Group.D:
        if not isinstance(lam, TypedPartition):
            lam = TypedPartition.parse(format_label(lam), k)
        if lam.k < 1:
            raise PreconditionError("k >= 1", "Level zero eta series are scaled Q-functions")
        tableaux = (t for t in enumerate_typed_tableaux(lam, m) if t.inner.type != 2)
        degree = lam.weight
    else:
        raise PreconditionError("group", f"Grouped tableau sums exist in types C and D, not {group.value}")
    grouped: Dict[Label, TruncatedSeries] = {}
    for t in tableaux:
        term = t.weight_series(m, k, degree)
        grouped[t.inner] = grouped[t.inner] + term if t.inner in grouped else term
    return {mu: s for mu, s in grouped.items() if s}


def contract_grouped(grouped: Dict[Label, TruncatedSeries], k: int) -> Optional[TruncatedSeries]:
    """sum over mu of grouped[mu] * s_{mu~}(X_k)."""
    total = None
    for mu, s in grouped.items():
        term = s * schur_series(conjugate(_parts(mu)), s.m, k, s.degree)
        total = term if total is None else total + term
    return total
