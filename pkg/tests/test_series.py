from fractions import Fraction

import pytest

from schubertine.combinat import (
    Group,
    SignedPermutation,
    TypedPartition,
    grassmannian_bijection,
    k_strict_partitions,
    typed_partitions,
)
from schubertine.errors import PreconditionError
from schubertine.freering import FreeElement, gen
from schubertine.quotient import GAMMA, reduce, ring_A
from schubertine.series import (
    TruncatedSeries,
    alternating_quotient_check,
    bialternant_schur,
    e_poly,
    evaluate_free,
    generator_series,
    grassmannian_bialternant_check,
    h_poly,
    multi_schur_pfaffian,
    nc,
    p_tilde,
    q_tilde,
    schur_series,
    substitute_eta,
    substitute_theta,
    weyl_action,
)


def _theta_image(m, k, degree):
    return lambda g: generator_series("theta", g.index, m, k, degree)


# ─────────────────────────────────────────────
# TruncatedSeries
# ─────────────────────────────────────────────
def test_truncation_drops_high_degree():
    z = TruncatedSeries.variable("z", 1, 1, 0, 2)
    assert z**2 == TruncatedSeries(1, 0, 2, {(2,): 1})
    assert not z**3


def test_shape_mismatch_is_rejected():
    with pytest.raises(PreconditionError):
        TruncatedSeries.const(1, 1, 0, 2) + TruncatedSeries.const(1, 2, 0, 2)
    with pytest.raises(PreconditionError):
        TruncatedSeries.variable("x", 2, 1, 1, 2)


def test_series_json_shape():
    x = TruncatedSeries.variable("z", 1, 2, 1, 2) * 3
    assert x.to_dict() == {"m": 2, "k": 1, "D": 2, "terms": [{"z": [1, 0], "x": [0], "c": "3"}]}
    assert TruncatedSeries.from_dict(x.to_dict()) == x


def test_swapped():
    x = TruncatedSeries.variable("x", 1, 0, 2, 1)
    assert x.swapped("x", 1) == TruncatedSeries.variable("x", 2, 0, 2, 1)


# ─────────────────────────────────────────────
# Generators
# ─────────────────────────────────────────────
@pytest.mark.parametrize("p", [1, 2, 3])
def test_q_in_one_variable(p):
    assert generator_series("Q", p, 1, 0) == TruncatedSeries(1, 0, p, {(p,): 2})
    assert generator_series("P", p, 1, 0) == TruncatedSeries(1, 0, p, {(p,): 1})


def test_elementary_vanishes_above_k():
    assert not generator_series("e", 3, 2, 2)
    assert generator_series("e", 2, 0, 2) == TruncatedSeries(0, 2, 2, {(1, 1): 1})


def test_theta_generator():
    m, k = 2, 1
    expected = generator_series("Q", 2, m, k) + generator_series("Q", 1, m, k, 2) * generator_series("e", 1, m, k, 2)
    assert generator_series("theta", 2, m, k) == expected


def test_q_relation():
    q1 = generator_series("Q", 1, 3, 0, 2)
    assert q1 * q1 == generator_series("Q", 2, 3, 0) * 2


def test_eta_prime_needs_degree_k():
    with pytest.raises(PreconditionError):
        generator_series("eta-prime", 1, 2, 2)


# ─────────────────────────────────────────────
# Substitution
# ─────────────────────────────────────────────
@pytest.mark.parametrize("p", [1, 3, 4])
def test_single_row_theta_at_level_zero(p):
    assert substitute_theta((p,), 0, 3) == generator_series("Q", p, 3, 0)


@pytest.mark.parametrize("p", [1, 3])
def test_single_row_eta_at_level_zero(p):
    assert substitute_eta(TypedPartition((p,), 0, 1), 3) == generator_series("P", p, 3, 0)


@pytest.mark.parametrize("k", [0, 1])
def test_rewriting_agrees_with_series(k):
    m, degree = 3, 7
    image = _theta_image(m, k, degree)
    for p in range(k + 1, k + 3):
        x = gen("u", p) ** 2 * gen("u", 1)
        assert evaluate_free(x, image, m, k, degree) == evaluate_free(reduce(x, ring_A(k)), image, m, k, degree)


def test_schur_series_matches_bialternant():
    assert schur_series((2, 1), 0, 3) == bialternant_schur((2, 1), 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bialternant_small_shapes(n):
    assert bialternant_schur((), n) == TruncatedSeries.const(1, 0, n, 0)
    ones = {tuple(int(i == j) for j in range(n)): 1 for i in range(n)}
    assert bialternant_schur((1,), n) == TruncatedSeries(0, n, 1, ones)


def test_bialternant_rejects_long_shapes():
    with pytest.raises(PreconditionError):
        bialternant_schur((1, 1, 1), 2)


@pytest.mark.parametrize("window", [(1, 2, 3), (1, 3, 2), (2, 3, 1)])
def test_grassmannian_bialternant(window):
    assert grassmannian_bialternant_check(SignedPermutation(window, Group.A), 2)


# ─────────────────────────────────────────────
# Gamma[X_n]
# ─────────────────────────────────────────────
def test_symmetric_polynomials():
    x1, x2 = gen("x", 1), gen("x", 2)
    assert e_poly(1, 2) == x1 + x2
    assert e_poly(3, 2) == FreeElement.zero()
    assert h_poly(2, 2) == x1**2 + x1 * x2 + x2**2


def test_s0_is_an_involution():
    c1 = gen("c", 1)
    assert weyl_action(0, weyl_action(0, c1, Group.C), Group.C) == c1


@pytest.mark.parametrize("g", [0, 1])
def test_nc_is_invariant(g):
    for p in range(1, 4):
        assert weyl_action(g, nc(p, 2), Group.C, 2) == reduce(nc(p, 2), GAMMA)


def test_weyl_action_rejects_foreign_generators():
    with pytest.raises(PreconditionError):
        weyl_action(0, gen("c", 1), Group.D)
    with pytest.raises(PreconditionError):
        weyl_action(2, gen("c", 1), Group.C, 2)


def test_q_tilde_single_row():
    assert q_tilde((1,), 3) == e_poly(1, 3)
    assert p_tilde((1,), 3) == e_poly(1, 3) * Fraction(1, 2)
    with pytest.raises(PreconditionError):
        q_tilde((1, 1), 2)


# ─────────────────────────────────────────────
# Alternating operator formulas
# ─────────────────────────────────────────────
def _grassmannian_elements(n, max_weight, group):
    for d in range(0, max_weight + 1):
        labels = k_strict_partitions(d, n) if group == Group.C else typed_partitions(d, n)
        for lam in labels:
            yield grassmannian_bijection(lam, n, group)


def test_twisted_pfaffian():
    b = lambda i: gen("b", i)
    x1 = gen("x", 1)
    plain = b(1) * b(3) + x1 * b(1) * b(2) - b(4) - x1 * b(3)
    assert multi_schur_pfaffian((3, 1), (1,), Group.D) == plain
    assert multi_schur_pfaffian((3, 1), (1,), Group.D, twisted=True) == plain + x1 * b(3) + x1**2 * b(2)


@pytest.mark.parametrize("label", ["", "1", "2:1", "2:2", "3", "2,1:1", "2,1:2"])
def test_alternating_quotient_in_d2(label):
    w = grassmannian_bijection(TypedPartition.parse(label, 2), 2, Group.D)
    assert alternating_quotient_check(w, 2, Group.D)


def test_alternating_quotient_in_c2():
    for w in _grassmannian_elements(2, 3, Group.C):
        assert alternating_quotient_check(w, 2, Group.C)


def test_alternating_quotient_identity_in_rank_one():
    assert alternating_quotient_check(SignedPermutation.identity(1, Group.C), 1, Group.C)


@pytest.mark.slow
@pytest.mark.parametrize("n, max_weight, group", [(2, 5, Group.D), (3, 3, Group.C), (3, 3, Group.D)])
def test_alternating_quotient_sweep(n, max_weight, group):
    for w in _grassmannian_elements(n, max_weight, group):
        assert alternating_quotient_check(w, n, group), str(w)
