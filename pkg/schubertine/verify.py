"""
Named verification suites: the worked examples and the cross-formula identities,
each case an independent pure check run on a worker pool.
"""

from __future__ import annotations

__all__ = ["Case", "Verifier", "SUITES"]

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, Iterator, Optional, Tuple

import pandas as pd

from schubertine._logger import log_debug, log_error, log_info
from schubertine.combinat import (
    Group,
    Partition,
    SignedPermutation,
    TypedPartition,
    format_label,
    grassmannian_bijection,
    k_strict_partitions,
    typed_partitions,
)
from schubertine.config import max_threads
from schubertine.errors import PreconditionError
from schubertine.freering import (
    FreeElement,
    Generator,
    determinant_formula,
    eta_polynomial,
    eta_spec,
    gen,
    pfaffian_formula,
    raising_expand,
    theta_polynomial,
    u_to_b,
)
from schubertine.pieri import pieri_candidates_C, pieri_product
from schubertine.quotient import GAMMA, GAMMA_PRIME, reduce, ring_A, ring_B, theta_basis_expand
from schubertine.series import (
    TruncatedSeries,
    alternating_quotient_check,
    bialternant_schur,
    evaluate_free,
    generator_series,
    grassmannian_bialternant_check,
    nb,
    nb_prime,
    nc,
    schur_series,
    substitute_eta,
    substitute_theta,
    weyl_action,
)
from schubertine.stanley import (
    nilcoxeter_mixed_stanley,
    stanley_coefficients,
    stanley_series_from_tree,
)
from schubertine.tableaux import (
    contract_grouped,
    eta_series_via_bitableaux,
    tableau_grouped_expansion,
    theta_series_via_bitableaux,
)

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    check: Callable[[], Outcome]


SUITES = (
    "giambelli", "pieri", "eta", "og", "stanley", "series", "determinants",
    "pieri-oracle", "tableaux", "trees", "small-rank",
)

# largest partition weight (or length l(w) for trees) each sweep visits by default
DEFAULT_WEIGHT = {
    "determinants": 8,
    "pieri-oracle": 4,
    "tableaux": 6,
    "trees": 6,
    "small-rank": 4,
    "series": 6,
}


def _expect(actual, expected) -> Outcome:
    if actual == expected:
        return True, ""
    return False, f"got {actual}, expected {expected}"


def _u(*indices: int) -> FreeElement:
    result = FreeElement.one()
    for i in indices:
        result = result * gen("u", i)
    return result


def _b(*names: str) -> FreeElement:
    result = FreeElement.one()
    for name in names:
        family = "b'" if name.endswith("'") else "b"
        result = result * gen(family, int(name.rstrip("'")))
    return result


def _by_parts(expansion) -> dict:
    return {
        (lab.parts if isinstance(lab, TypedPartition) else lab): c
        for lab, c in expansion.coeffs.items()
    }


# ─────────────────────────────────────────────
# Worked examples
# ─────────────────────────────────────────────
def _giambelli_cases() -> list[Case]:
    expected = _u(5, 2, 1) - _u(5, 3) - _u(6, 1, 1) * 2 + _u(6, 2) + _u(7, 1) * 2
    return [
        Case("giambelli", "theta k=2 (5,2,1)", lambda: _expect(theta_polynomial((5, 2, 1), 2), expected)),
        Case(
            "giambelli",
            "theta basis round trip (5,2,1)",
            lambda: _expect(_by_parts(theta_basis_expand(expected, 2)), {(5, 2, 1): 1}),
        ),
    ]


def _pieri_cases() -> list[Case]:
    schur = {(5, 2, 1): 1, (4, 2, 2): 1, (4, 2, 1, 1): 1, (3, 2, 2, 1): 1}
    theta = {(6,): 2, (5, 1): 4, (4, 2): 1, (4, 1, 1): 2, (3, 2, 1): 1}
    return [
        Case("pieri", "A u3 s(2,2,1)", lambda: _expect(_by_parts(pieri_product((2, 2, 1), 3, 0, Group.A)), schur)),
        Case(
            "pieri",
            "C candidates k=1 (2,1) p=3",
            lambda: _expect({mu: 2**n for mu, n in pieri_candidates_C((2, 1), 3, 1)}, theta),
        ),
        Case(
            "pieri",
            "C normal form k=1 (2,1) p=3",
            lambda: _expect(
                _by_parts(theta_basis_expand(gen("u", 3) * theta_polynomial((2, 1), 1), 1)), theta
            ),
        ),
    ]


def _eta_cases() -> list[Case]:
    lam = TypedPartition((3, 2, 2), 2, 2)
    expected = (
        _b("3", "2'", "2") + _b("3", "2'", "2'") - _b("3", "3", "1") + _b("4", "3")
        - _b("4", "2'", "1") + _b("6", "1") - _b("7")
    )

    def sum_identity() -> Outcome:
        other = TypedPartition((3, 2, 2), 2, 1)
        plain = raising_expand(
            eta_spec(lam.parts, 2),
            lam.parts,
            lambda seq: _product(u_to_b(a, 2) for a in seq),
        ) * Fraction(1, 2**lam.ell_k)
        return _expect(eta_polynomial(lam) + eta_polynomial(other), plain)

    return [
        Case("eta", "eta k=2 (3,2,2):2", lambda: _expect(eta_polynomial(lam), expected)),
        Case("eta", "eta + eta' k=2 (3,2,2)", sum_identity),
    ]


def _product(factors: Iterable[FreeElement]) -> FreeElement:
    result = FreeElement.one()
    for f in factors:
        result = result * f
    return result


def _og_cases() -> list[Case]:
    lam = "8,7,2,1,1:1"
    both = {(8, 7, 4, 1, 1): 1, (8, 7, 3, 2, 1): 1}
    return [
        Case(
            "og",
            "b2 times (8,7,2,1,1):1 in 5x8",
            lambda: _expect(_by_parts(pieri_product(lam, 2, 2, Group.D, rectangle=(5, 8))), {**both, (8, 7, 6): 1}),
        ),
        Case(
            "og",
            "b'2 times (8,7,2,1,1):1 in 5x8",
            lambda: _expect(_by_parts(pieri_product(lam, 2, 2, Group.D, prime=True, rectangle=(5, 8))), both),
        ),
    ]


def _stanley_cases() -> list[Case]:
    a = SignedPermutation((2, 1, 5, 4, 3), Group.A)
    c = SignedPermutation((3, -1, 2, 5, 4), Group.C)
    return [
        Case("stanley", "tree G 21543", lambda: _expect(stanley_coefficients(a), {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1})),
        Case(
            "stanley",
            "nilCoxeter G 21543 m=4",
            lambda: _expect(nilcoxeter_mixed_stanley(a, 0, 4), stanley_series_from_tree(a, 0, 4)),
        ),
        Case("stanley", "tree J 3-1254 k=1", lambda: _expect(stanley_coefficients(c, 1), {(4,): 1, (3, 1): 2, (2, 1, 1): 1})),
        Case(
            "stanley",
            "nilCoxeter J 3-1254 k=1 m=4",
            lambda: _expect(nilcoxeter_mixed_stanley(c, 1, 4, 4), stanley_series_from_tree(c, 1, 4, 4)),
        ),
    ]


# ─────────────────────────────────────────────
# Series identities
# ─────────────────────────────────────────────
def _eta_row_expected(r: int, m: int, column: bool) -> TruncatedSeries:
    x = TruncatedSeries.variable("x", 1, m, 1, r)
    total = TruncatedSeries(m, 1, r)
    if not column:
        return generator_series("P", r, m, 1, r) + generator_series("P", r - 1, m, 1, r) * x
    for j in range(r + 1):
        weight = 1 if j in (0, r) else 2
        total = total + generator_series("P", r - j, m, 1, r) * (x ** j) * weight
    return total


def _series_cases(weight: int) -> list[Case]:
    cases = []
    m = 6
    for r in range(1, weight + 1):
        row = TypedPartition((r,), 1, 1 if r == 1 else 0)
        column = (1,) * r
        cases += [
            Case("series", f"eta k=1 ({r})", lambda row=row, r=r: _expect(substitute_eta(row, m), _eta_row_expected(r, m, False))),
            Case(
                "series",
                f"eta k=1 (1^{r}):1",
                lambda column=column, r=r: _expect(
                    substitute_eta(TypedPartition(column, 1, 1), m), _eta_row_expected(r, m, True)
                ),
            ),
            Case(
                "series",
                f"eta k=1 (1^{r}):2",
                lambda column=column, r=r: _expect(
                    substitute_eta(TypedPartition(column, 1, 2), m), generator_series("P", r, m, 1, r)
                ),
            ),
        ]
    for p, k in product(range(1, weight + 1), range(0, 4)):
        cases.append(Case("series", f"theta ({p}) k={k}", lambda p=p, k=k: _theta_row(p, k, False)))
        if k >= 1:
            cases.append(Case("series", f"theta (1^{p}) k={k}", lambda p=p, k=k: _theta_row(p, k, True)))
    for n in range(1, 5):
        for d in range(0, weight + 1):
            for lam in k_strict_partitions(d, d):
                if len(lam) <= n:
                    cases.append(
                        Case(
                            "series",
                            f"bialternant {format_label(lam)} n={n}",
                            lambda lam=lam, n=n: _expect(bialternant_schur(lam, n), schur_series(lam, 0, n)),
                        )
                    )
    for n in range(1, 4):
        for d in range(0, 5):
            for lam in k_strict_partitions(d, d):
                if len(lam) <= n:
                    w = grassmannian_bijection(lam, n, Group.A)
                    cases.append(
                        Case(
                            "series",
                            f"grassmannian bialternant {w} n={n}",
                            lambda w=w, n=n: (grassmannian_bialternant_check(w, n), ""),
                        )
                    )
    return cases


def _theta_row(p: int, k: int, column: bool) -> Outcome:
    m = 4
    lam = (1,) * p if column else (p,)
    other = "h" if column else "e"
    expected = TruncatedSeries(m, k, p)
    for j in range(p + 1):
        expected = expected + generator_series("Q", p - j, m, k, p) * generator_series(other, j, m, k, p)
    return _expect(substitute_theta(lam, k, m), expected)


def _determinant_cases(weight: int) -> list[Case]:
    cases = []
    for k, d in product(range(0, 4), range(1, weight + 1)):
        for lam in k_strict_partitions(d, k):
            if all(p <= k for p in lam):
                cases.append(
                    Case(
                        "determinants",
                        f"det k={k} {format_label(lam)}",
                        lambda lam=lam, k=k: _expect(theta_polynomial(lam, k), determinant_formula(lam, "u")),
                    )
                )
            elif all(p > k for p in lam) and all(
                lam[i] + lam[j] > 2 * k + j - i for i in range(len(lam)) for j in range(i + 1, len(lam))
            ):
                cases.append(
                    Case(
                        "determinants",
                        f"pf k={k} {format_label(lam)}",
                        lambda lam=lam, k=k: _expect(theta_polynomial(lam, k), pfaffian_formula(lam, k)),
                    )
                )
    return cases


# ─────────────────────────────────────────────
# Pieri rules against the series oracle
# ─────────────────────────────────────────────
def _pieri_oracle_C(lam: Partition, p: int, k: int) -> Outcome:
    m = degree = sum(lam) + p
    lhs = substitute_theta(lam, k, m, degree) * generator_series("theta", p, m, k, degree)
    rhs = TruncatedSeries(m, k, degree)
    for mu, c in pieri_product(lam, p, k, Group.C).coeffs.items():
        rhs = rhs + substitute_theta(mu, k, m, degree) * c
    return _expect(lhs, rhs)


def _pieri_oracle_D(lam: TypedPartition, p: int, prime: bool) -> Outcome:
    k = lam.k
    m = degree = lam.weight + p
    which = "eta-prime" if prime else "eta"
    lhs = substitute_eta(lam, m, degree) * generator_series(which, p, m, k, degree)
    rhs = TruncatedSeries(m, k, degree)
    for mu, c in pieri_product(lam, p, k, Group.D, prime=prime).coeffs.items():
        rhs = rhs + substitute_eta(mu, m, degree) * c
    return _expect(lhs, rhs)


def _pieri_oracle_cases(weight: int) -> list[Case]:
    cases = []
    for k, d, p in product(range(0, 3), range(0, weight + 1), range(1, 5)):
        for lam in k_strict_partitions(d, k):
            cases.append(
                Case(
                    "pieri-oracle",
                    f"C k={k} {format_label(lam)} p={p}",
                    lambda lam=lam, p=p, k=k: _pieri_oracle_C(lam, p, k),
                )
            )
        for lam in typed_partitions(d, k):
            cases.append(
                Case(
                    "pieri-oracle",
                    f"D k={k} {lam.label} p={p}",
                    lambda lam=lam, p=p: _pieri_oracle_D(lam, p, False),
                )
            )
            if k >= 1 and p == k:
                cases.append(
                    Case(
                        "pieri-oracle",
                        f"D' k={k} {lam.label}",
                        lambda lam=lam: _pieri_oracle_D(lam, lam.k, True),
                    )
                )
    return cases


# ─────────────────────────────────────────────
# Tableau formulas
# ─────────────────────────────────────────────
def _tableaux_cases(weight: int) -> list[Case]:
    m = 4
    cases = []
    for k, d in product(range(0, 3), range(0, weight + 1)):
        for lam in k_strict_partitions(d, k):
            cases.append(
                Case(
                    "tableaux",
                    f"theta bitableaux k={k} {format_label(lam)}",
                    lambda lam=lam, k=k: _expect(theta_series_via_bitableaux(lam, k, m), substitute_theta(lam, k, m)),
                )
            )
            cases.append(
                Case(
                    "tableaux",
                    f"theta grouped k={k} {format_label(lam)}",
                    lambda lam=lam, k=k: _grouped_matches(lam, k, Group.C, m),
                )
            )
        if k == 0:
            continue
        for lam in typed_partitions(d, k):
            cases.append(
                Case(
                    "tableaux",
                    f"eta bitableaux k={k} {lam.label}",
                    lambda lam=lam: _expect(eta_series_via_bitableaux(lam, m), substitute_eta(lam, m)),
                )
            )
            cases.append(
                Case(
                    "tableaux",
                    f"eta grouped k={k} {lam.label}",
                    lambda lam=lam, k=k: _grouped_matches(lam, k, Group.D, m),
                )
            )
    return cases


def _grouped_matches(lam, k: int, group: Group, m: int) -> Outcome:
    grouped = tableau_grouped_expansion(lam, k, group, m)
    if group == Group.C:
        expected = theta_series_via_bitableaux(lam, k, m)
    else:
        expected = eta_series_via_bitableaux(lam, m)
    contracted = contract_grouped(grouped, k)
    if contracted is None:
        return _expect(bool(expected), False)
    return _expect(contracted, expected)


# ─────────────────────────────────────────────
# Transition trees against the nilCoxeter algebra
# ─────────────────────────────────────────────
def _group_elements(n: int, group: Group) -> Iterator[SignedPermutation]:
    for values in permutations(range(1, n + 1)):
        if group == Group.A:
            yield SignedPermutation(values, group)
            continue
        for signs in product((1, -1), repeat=n):
            if group == Group.D and signs.count(-1) % 2:
                continue
            yield SignedPermutation(tuple(v * s for v, s in zip(values, signs)), group)


def _tree_agrees(w: SignedPermutation, k: int) -> Outcome:
    m = max(w.length, 1)
    return _expect(nilcoxeter_mixed_stanley(w, k, m), stanley_series_from_tree(w, k, m))


def _tree_cases(weight: int) -> list[Case]:
    cases = []
    for w in _group_elements(5, Group.A):
        if w.length <= weight:
            cases.append(Case("trees", f"A {w}", lambda w=w: _tree_agrees(w, 0)))
    for group in (Group.C, Group.D):
        for w, k in product(_group_elements(4, group), range(0, 3)):
            if w.length <= weight and w.is_increasing_up_to(k):
                cases.append(Case("trees", f"{group.value} {w} k={k}", lambda w=w, k=k: _tree_agrees(w, k)))
    return cases


# ─────────────────────────────────────────────
# Small-rank ring identities
# ─────────────────────────────────────────────
def _series_image(k: int, m: int, degree: int) -> Callable[[Generator], TruncatedSeries]:
    def image(g: Generator) -> TruncatedSeries:
        if g.family == "u":
            return generator_series("theta", g.index, m, k, degree)
        if g.family == "c":
            return generator_series("Q", g.index, m, k, degree)
        if g.family == "b":
            return generator_series("eta", g.index, m, k, degree)
        if g.family == "b'":
            return generator_series("eta-prime", g.index, m, k, degree)
        raise PreconditionError("generator", f"No series image for {g}")

    return image


def _relation_holds(x: FreeElement, ring, k: int) -> Outcome:
    """x and its normal form agree once pushed into the series model."""
    degree = max(x.degrees())
    m = 3
    difference = x - reduce(x, ring)
    return _expect(evaluate_free(difference, _series_image(k, m, degree), m, k, degree), TruncatedSeries(m, k, degree))


def _small_rank_cases(weight: int) -> list[Case]:
    cases = []
    for n, p in product(range(1, 4), range(1, 6)):
        for g in range(0, n):
            cases.append(
                Case(
                    "small-rank",
                    f"s_{g} fixes ^{n}c_{p}",
                    lambda g=g, n=n, p=p: _expect(weyl_action(g, nc(p, n), Group.C, n), reduce(nc(p, n), GAMMA)),
                )
            )
    for n, p in product(range(2, 4), range(1, 6)):
        for g in SignedPermutation.identity(n, Group.D).generators():
            cases.append(
                Case(
                    "small-rank",
                    f"s_{g} fixes ^{n}b_{p}",
                    lambda g=g, n=n, p=p: _expect(
                        weyl_action(g, nb(p, n), Group.D, n), reduce(nb(p, n), GAMMA_PRIME)
                    ),
                )
            )
    for n in range(2, 4):
        for g in SignedPermutation.identity(n, Group.D).generators():
            cases.append(
                Case(
                    "small-rank",
                    f"s_{g} fixes ^{n}b'_{n}",
                    lambda g=g, n=n: _expect(
                        weyl_action(g, nb_prime(n), Group.D, n), reduce(nb_prime(n), GAMMA_PRIME)
                    ),
                )
            )
    for p in range(1, 6):
        cases.append(Case("small-rank", f"Gamma c_{p}^2", lambda p=p: _relation_holds(gen("c", p) ** 2, GAMMA, 0)))
        cases.append(Case("small-rank", f"Gamma' b_{p}^2", lambda p=p: _relation_holds(gen("b", p) ** 2, GAMMA_PRIME, 0)))
        for k in range(1, 3):
            if p > k:
                cases.append(
                    Case("small-rank", f"A({k}) u_{p}^2", lambda p=p, k=k: _relation_holds(gen("u", p) ** 2, ring_A(k), k))
                )
                cases.append(
                    Case("small-rank", f"B({k}) b_{p}^2", lambda p=p, k=k: _relation_holds(gen("b", p) ** 2, ring_B(k), k))
                )
    for k in range(1, 3):
        cases.append(
            Case("small-rank", f"B({k}) b_{k} b'_{k}", lambda k=k: _relation_holds(gen("b", k) * gen("b'", k), ring_B(k), k))
        )
    cases.append(
        Case(
            "small-rank",
            "alternating C1 identity",
            lambda: (alternating_quotient_check(SignedPermutation.identity(1, Group.C), 1, Group.C), ""),
        )
    )
    for n, d in product(range(2, 4), range(0, weight + 1)):
        labels = [(Group.C, lam) for lam in k_strict_partitions(d, n)]
        labels += [(Group.D, lam) for lam in typed_partitions(d, n)]
        for group, lam in labels:
            w = grassmannian_bijection(lam, n, group)
            cases.append(
                Case(
                    "small-rank",
                    f"alternating {group.value}{n} {format_label(lam)}",
                    lambda w=w, n=n, group=group: (alternating_quotient_check(w, n, group), ""),
                )
            )
    return cases


# ─────────────────────────────────────────────
# Runner
# ─────────────────────────────────────────────
class Verifier:
    def __init__(self, max_weight: Optional[int] = None, max_workers: Optional[int] = None):
        """Runs named suites; max_weight overrides every sweep's default bound."""
        self.max_weight = max_weight
        self.max_workers = max_workers or max_threads()
        log_info(f"Verifier :: Initiated with {self.max_workers} workers")

    def _weight(self, suite: str) -> int:
        return self.max_weight if self.max_weight is not None else DEFAULT_WEIGHT.get(suite, 0)

    def cases(self, suite: str) -> list[Case]:
        builders = {
            "giambelli": _giambelli_cases,
            "pieri": _pieri_cases,
            "eta": _eta_cases,
            "og": _og_cases,
            "stanley": _stanley_cases,
            "series": lambda: _series_cases(self._weight("series")),
            "determinants": lambda: _determinant_cases(self._weight("determinants")),
            "pieri-oracle": lambda: _pieri_oracle_cases(self._weight("pieri-oracle")),
            "tableaux": lambda: _tableaux_cases(self._weight("tableaux")),
            "trees": lambda: _tree_cases(self._weight("trees")),
            "small-rank": lambda: _small_rank_cases(self._weight("small-rank")),
        }
        if suite == "all":
            return [case for name in SUITES for case in builders[name]()]
        if suite not in builders:
            raise PreconditionError("suite", f"Unknown suite {suite!r}; choose one of {', '.join(SUITES)} or all")
        return builders[suite]()

    @staticmethod
    def _run_case(case: Case) -> dict:
        start = time.perf_counter()
        try:
            passed, detail = case.check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        seconds = time.perf_counter() - start
        if passed:
            log_debug(f"Verifier :: {case.suite} / {case.name} passed in {seconds:.3f}s")
        else:
            log_error(f"Verifier :: {case.suite} / {case.name} FAILED: {detail}")
        return {
            "suite": case.suite,
            "case": case.name,
            "passed": bool(passed),
            "seconds": seconds,
            "detail": detail,
        }

    def run(self, suite: str) -> pd.DataFrame:
        cases = self.cases(suite)
        log_info(f"Verifier :: Running {len(cases)} cases of suite {suite}")
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            rows = list(pool.map(self._run_case, cases))
        df = pd.DataFrame(rows, columns=["suite", "case", "passed", "seconds", "detail"])
        df = df.sort_values(["suite", "case"], kind="stable").reset_index(drop=True)
        failed = int((~df["passed"]).sum()) if not df.empty else 0
        log_info(f"Verifier :: Suite {suite}: {len(df) - failed} passed, {failed} failed")
        return df

    @staticmethod
    def passed(results: pd.DataFrame) -> bool:
        return bool(results["passed"].all()) if not results.empty else True
