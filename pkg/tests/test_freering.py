import json
from fractions import Fraction

import pytest

from schubertine.combinat import TypedPartition, partitions, is_k_strict, typed_partitions
from schubertine.errors import PreconditionError
from schubertine.freering import (
    FreeElement,
    RaisingOperatorSpec,
    determinant_formula,
    eta_spec,
    eta_star_expand,
    eta_level0,
    eta_polynomial,
    gen,
    pfaffian_formula,
    plain_evaluation,
    raising_expand,
    schur_spec,
    theta_polynomial,
    theta_spec,
    u_to_b,
)


def u(*indices):
    result = FreeElement.one()
    for i in indices:
        result = result * gen("u", i)
    return result


def b(*names):
    result = FreeElement.one()
    for name in names:
        family = "b'" if name.endswith("'") else "b"
        result = result * gen(family, int(name.rstrip("'")))
    return result


THETA_521 = u(5, 2, 1) - u(5, 3) - u(6, 1, 1) * 2 + u(6, 2) + u(7, 1) * 2


# ─────────────────────────────────────────────
# FreeElement
# ─────────────────────────────────────────────
def test_unit_and_zero_conventions():
    assert gen("u", 0) == FreeElement.one()
    assert not gen("c", -2)
    assert gen("u", 3) * gen("u", -1) == FreeElement.zero()
    with pytest.raises(PreconditionError):
        gen("q", 1)


def test_arithmetic_and_integrality():
    x = gen("u", 1) * Fraction(1, 2)
    assert not x.is_integral
    assert (x * 2).is_integral
    assert (gen("u", 2) - gen("u", 2)) == FreeElement.zero()
    assert (gen("u", 1) + 1) * (gen("u", 1) - 1) == gen("u", 1) ** 2 - 1


def test_json_shape_and_round_trip():
    x = gen("u", 6) * gen("u", 1) ** 2 * (-2)
    assert x.to_dict() == {"terms": [{"c": "-2", "m": {"u1": 2, "u6": 1}}]}
    assert FreeElement.from_dict(json.loads(THETA_521.to_json())) == THETA_521


# ─────────────────────────────────────────────
# Raising operators
# ─────────────────────────────────────────────
@pytest.mark.parametrize("a, b_", [(3, 1), (4, 2), (2, 2)])
def test_two_row_schur(a, b_):
    assert raising_expand(schur_spec(2), (a, b_)) == u(a, b_) - u(a + 1, b_ - 1)


def test_empty_operator():
    spec = RaisingOperatorSpec(3, frozenset(), frozenset())
    assert raising_expand(spec, (4, 2, 1)) == u(4, 2, 1)


def test_termination_guard():
    spec = RaisingOperatorSpec(2, frozenset(), frozenset({(1, 2)}))
    with pytest.raises(PreconditionError):
        raising_expand(spec, (2, 1), require_termination=True)


def test_theta_spec_denominator():
    assert theta_spec((5, 2, 1), 2).denominator == frozenset({(1, 2)})
    assert theta_spec((2, 2, 1), 2).denominator == frozenset()
    with pytest.raises(PreconditionError):
        theta_spec((3, 3), 2)


def test_theta_polynomial_521():
    assert theta_polynomial((5, 2, 1), 2) == THETA_521


def test_leading_monomial_is_unitriangular():
    for k in range(0, 3):
        for d in range(1, 7):
            for lam in partitions(d):
                if is_k_strict(lam, k):
                    assert theta_polynomial(lam, k).coefficient(_monomial(lam)) == 1


def _monomial(lam):
    (monomial,) = u(*lam).terms
    return monomial


# ─────────────────────────────────────────────
# Eta polynomials
# ─────────────────────────────────────────────
def test_eta_322_type_2():
    expected = (
        b("3", "2'", "2") + b("3", "2'", "2'") - b("3", "3", "1") + b("4", "3")
        - b("4", "2'", "1") + b("6", "1") - b("7")
    )
    assert eta_polynomial(TypedPartition((3, 2, 2), 2, 2)) == expected


def test_eta_sum_of_types():
    lam = (3, 2, 2)
    both = eta_polynomial(TypedPartition(lam, 2, 1)) + eta_polynomial(TypedPartition(lam, 2, 2))
    image = lambda seq: _product(u_to_b(a, 2) for a in seq)
    # one part exceeds k
    plain = raising_expand(eta_spec(lam, 2), lam, image) * Fraction(1, 2)
    assert both == plain


def _product(factors):
    result = FreeElement.one()
    for f in factors:
        result = result * f
    return result


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eta_single_part_k(k):
    assert eta_polynomial(TypedPartition((k,), k, 1)) == gen("b", k)
    assert eta_polynomial(TypedPartition((k,), k, 2)) == gen("b'", k)


def test_eta_star_expand_takes_other_images():
    swapped = (gen("b'", 2), gen("b", 2))
    assert eta_star_expand(TypedPartition((2,), 2, 1), bk_images=swapped) == gen("b'", 2)
    with pytest.raises(PreconditionError):
        eta_star_expand(TypedPartition((2, 1), 0, 1))


def test_eta_level0():
    assert eta_level0((4,)) == gen("b", 4)
    assert eta_level0(()) == FreeElement.one()
    assert eta_level0((2, 1)) == b("2", "1") - b("3")
    with pytest.raises(PreconditionError):
        eta_level0((1, 1))


def test_eta_is_integral():
    for k in range(1, 3):
        for d in range(1, 7):
            for lam in typed_partitions(d, k):
                assert eta_polynomial(lam).is_integral


def test_u_to_b():
    assert u_to_b(1, 2) == gen("b", 1)
    assert u_to_b(2, 2) == gen("b", 2) + gen("b'", 2)
    assert u_to_b(3, 2) == gen("b", 3) * 2
    assert u_to_b(0, 2) == FreeElement.one()


# ─────────────────────────────────────────────
# Determinants and Pfaffians
# ─────────────────────────────────────────────
def test_determinant_two_rows_matches_raising_operators():
    assert determinant_formula((3, 1), "u") == u(3, 1) - u(4)
    assert determinant_formula((), "u") == FreeElement.one()
    assert determinant_formula((2, 1), "h") == raising_expand(schur_spec(2), (2, 1), plain_evaluation("h"))


@pytest.mark.parametrize("lam, k", [((2, 2, 1), 2), ((1, 1, 1), 1), ((3, 2, 1), 3)])
def test_determinant_case(lam, k):
    assert theta_polynomial(lam, k) == determinant_formula(lam, "u")


@pytest.mark.parametrize("lam, k", [((2, 1), 0), ((3, 2, 1), 0), ((5, 3), 1), ((4, 1), 0)])
def test_pfaffian_case(lam, k):
    assert theta_polynomial(lam, k) == pfaffian_formula(lam, k)


def test_pfaffian_rejects_small_parts():
    with pytest.raises(PreconditionError):
        pfaffian_formula((3, 1), 1)
