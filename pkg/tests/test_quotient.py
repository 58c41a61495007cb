import json

import pytest

from schubertine.combinat import TypedPartition, is_k_strict, partitions, typed_partitions
from schubertine.errors import PreconditionError
from schubertine.freering import FreeElement, eta_polynomial, gen, theta_polynomial
from schubertine.quotient import (
    GAMMA,
    GAMMA_PRIME,
    LAMBDA,
    BasisExpansion,
    RingDescriptor,
    basis_expand,
    eta_basis_expand,
    expansion_element,
    normal_form,
    quotient_equal,
    reduce,
    ring_A,
    ring_B,
    schur_basis_expand,
    theta_basis_expand,
)


# ─────────────────────────────────────────────
# Rewriting
# ─────────────────────────────────────────────
def test_gamma_square():
    assert reduce(gen("c", 1) ** 2, GAMMA) == gen("c", 2) * 2
    assert quotient_equal(gen("c", 1) ** 2, gen("c", 2) * 2, GAMMA)


def test_gamma_prime_square():
    assert reduce(gen("b", 1) ** 2, GAMMA_PRIME) == gen("b", 2)


def test_level_one_square():
    u = lambda i: gen("u", i)
    assert reduce(u(2) ** 2, ring_A(1)) == u(3) * u(1) * 2 - u(4) * 2
    assert reduce(u(1) ** 2, ring_A(1)) == u(1) ** 2


@pytest.mark.parametrize("k", [0, 1, 2])
def test_relations_vanish(k):
    u = lambda i: gen("u", i)
    for p in range(k + 1, k + 4):
        relation = u(p) ** 2 + sum(
            (u(p + i) * u(p - i) * (2 if i % 2 == 0 else -2) for i in range(1, p + 1)),
            FreeElement(),
        )
        assert quotient_equal(relation, FreeElement(), ring_A(k))


def test_lambda_is_free():
    x = gen("u", 2) ** 3
    assert reduce(x, LAMBDA) == x


def test_foreign_generators_are_rejected():
    with pytest.raises(PreconditionError):
        reduce(gen("c", 1), ring_A(1))
    with pytest.raises(PreconditionError):
        normal_form(gen("x", 1) * gen("u", 2), ring_A(1))


def test_normal_form_is_idempotent():
    x = gen("u", 3) * theta_polynomial((2, 1), 1)
    once = reduce(x, ring_A(1))
    assert reduce(once, ring_A(1)) == once


def test_ring_descriptor_parse():
    assert RingDescriptor.parse("A(2)") == ring_A(2)
    assert RingDescriptor.parse("B(1)") == ring_B(1)
    assert RingDescriptor.parse("Gamma") == GAMMA
    assert str(ring_B(3)) == "B(3)"


# ─────────────────────────────────────────────
# Basis expansions
# ─────────────────────────────────────────────
def test_theta_round_trip():
    for k in range(0, 3):
        for d in range(1, 6):
            for lam in partitions(d):
                if is_k_strict(lam, k):
                    assert theta_basis_expand(theta_polynomial(lam, k), k) == {lam: 1}


def test_theta_521():
    assert theta_basis_expand(theta_polynomial((5, 2, 1), 2), 2) == {(5, 2, 1): 1}


def test_u3_times_theta21():
    x = gen("u", 3) * theta_polynomial((2, 1), 1)
    expected = {(6,): 2, (5, 1): 4, (4, 2): 1, (4, 1, 1): 2, (3, 2, 1): 1}
    assert theta_basis_expand(x, 1) == expected


@pytest.mark.parametrize("p", [1, 2, 5])
def test_single_generator(p):
    assert theta_basis_expand(gen("u", p), 1) == {(p,): 1}


def test_eta_round_trip():
    for k in range(1, 3):
        for d in range(1, 6):
            for lam in typed_partitions(d, k):
                assert eta_basis_expand(eta_polynomial(lam), k) == {lam: 1}


def test_eta_322():
    lam = TypedPartition((3, 2, 2), 2, 2)
    assert eta_basis_expand(eta_polynomial(lam), 2) == {lam: 1}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_eta_of_b_generators(k):
    assert eta_basis_expand(gen("b", k), k) == {TypedPartition((k,), k, 1): 1}
    assert eta_basis_expand(gen("b'", k), k) == {TypedPartition((k,), k, 2): 1}


def test_schur_expansion_of_h_products():
    h = lambda i: gen("u", i)
    assert schur_basis_expand(h(2) * h(1)) == {(3,): 1, (2, 1): 1}
    assert schur_basis_expand(h(1) ** 3) == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}


def test_expansion_element_inverts_basis_expand():
    x = gen("u", 3) * theta_polynomial((2, 1), 1)
    expansion = basis_expand(x, ring_A(1))
    assert quotient_equal(expansion_element(expansion), x, ring_A(1))


def test_basis_expansion_dict_round_trip():
    lam = TypedPartition((3, 2, 2), 2, 2)
    expansion = BasisExpansion(ring_B(2), "eta", {lam: 3, TypedPartition((4,), 2, 0): -1})
    data = json.loads(expansion.to_json())
    assert data["ring"] == "B(2)"
    assert [row["label"] for row in data["coeffs"]] == ["4:0", "3,2,2:2"]
    assert BasisExpansion.from_dict(data) == expansion


def test_truncation():
    expansion = BasisExpansion(ring_A(1), "theta", {(6,): 2, (3, 2, 1): 1})
    assert expansion.truncated(3, 5) == {(3, 2, 1): 1}
