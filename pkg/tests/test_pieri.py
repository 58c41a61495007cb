import pytest

from schubertine.combinat import Group, TypedPartition, is_k_strict, partitions, typed_partitions
from schubertine.errors import PreconditionError
from schubertine.freering import eta_polynomial, gen, theta_polynomial
from schubertine.pieri import (
    k_horizontal_strip,
    pieri_candidates_C,
    pieri_candidates_D,
    pieri_level0_D,
    pieri_product,
    pieri_terms,
    strip_witness,
)
from schubertine.quotient import eta_basis_expand, theta_basis_expand


def _by_parts(expansion):
    return {getattr(lab, "parts", lab): c for lab, c in expansion.coeffs.items()}


# ─────────────────────────────────────────────
# Type A
# ─────────────────────────────────────────────
def test_schur_pieri():
    expected = {(5, 2, 1): 1, (4, 2, 2): 1, (4, 2, 1, 1): 1, (3, 2, 2, 1): 1}
    assert pieri_product((2, 2, 1), 3, 0, Group.A) == expected


def test_schur_pieri_degree_zero():
    assert pieri_product((3, 1), 0, 0, "A") == {(3, 1): 1}


# ─────────────────────────────────────────────
# Type C
# ─────────────────────────────────────────────
def test_symplectic_candidates():
    found = dict(pieri_candidates_C((2, 1), 3, 1))
    assert found == {(6,): 1, (5, 1): 2, (4, 2): 0, (4, 1, 1): 1, (3, 2, 1): 0}


def test_symplectic_product():
    expected = {(6,): 2, (5, 1): 4, (4, 2): 1, (4, 1, 1): 2, (3, 2, 1): 1}
    assert pieri_product((2, 1), 3, 1, Group.C) == expected
    assert pieri_product((2, 1), 3, 1, Group.C).basis == "theta"


@pytest.mark.parametrize("lam", [(2, 1), (3,), ()])
def test_symplectic_degree_zero(lam):
    assert pieri_candidates_C(lam, 0, 1) == [(lam, 0)]


def test_small_weights_are_plain_horizontal_strips():
    k = 4
    for lam in [(1,), (2, 1), (1, 1)]:
        for p in range(0, k - sum(lam) + 1):
            found = dict(pieri_candidates_C(lam, p, k))
            strips = pieri_product(lam, p, 0, Group.A)
            assert set(found) == set(strips.coeffs)
            assert set(found.values()) <= {0}


def test_symplectic_rejects_non_strict():
    with pytest.raises(PreconditionError):
        pieri_product((3, 3), 1, 1, Group.C)
    with pytest.raises(PreconditionError):
        pieri_product((2, 1), -1, 1, Group.C)


@pytest.mark.parametrize("k", [0, 1])
def test_symplectic_product_matches_rewriting(k):
    for d in range(0, 4):
        for lam in partitions(d):
            if not is_k_strict(lam, k):
                continue
            for p in range(1, 4):
                x = gen("u", p) * theta_polynomial(lam, k)
                assert pieri_product(lam, p, k, Group.C) == theta_basis_expand(x, k).coeffs


# ─────────────────────────────────────────────
# Type D
# ─────────────────────────────────────────────
def test_orthogonal_grassmannian_example():
    lam = "8,7,2,1,1:1"
    both = {(8, 7, 4, 1, 1): 1, (8, 7, 3, 2, 1): 1}
    plain = pieri_product(lam, 2, 2, Group.D, rectangle=(5, 8))
    primed = pieri_product(lam, 2, 2, Group.D, prime=True, rectangle=(5, 8))
    assert _by_parts(plain) == {**both, (8, 7, 6): 1}
    assert _by_parts(primed) == both


def test_orthogonal_empty_shape():
    assert pieri_product("", 2, 2, Group.D) == {TypedPartition((2,), 2, 1): 1}
    assert pieri_product("", 2, 2, Group.D, prime=True) == {TypedPartition((2,), 2, 2): 1}


def test_orthogonal_candidates():
    empty = TypedPartition((), 2, 0)
    assert pieri_candidates_D(empty, 2, 2) == [(TypedPartition((2,), 2, 1), 1)]
    assert pieri_candidates_D(empty, 2, 2, prime=True) == [(TypedPartition((2,), 2, 2), 1)]
    with pytest.raises(PreconditionError):
        pieri_candidates_D(empty, 2, 1)


def test_orthogonal_prime_needs_degree_k():
    with pytest.raises(PreconditionError):
        pieri_product("", 1, 2, Group.D, prime=True)


@pytest.mark.parametrize(
    "lam, p, expected",
    [
        ((), 3, {(3,): 1}),
        ((2,), 2, {(4,): 1, (3, 1): 2}),
        ((3, 1), 1, {(4, 1): 1, (3, 2): 1}),
    ],
)
def test_level_zero(lam, p, expected):
    assert dict(pieri_level0_D(lam, p)) == expected


def test_multiplicities_are_positive_integers():
    k = 1
    for d in range(0, 5):
        for lam in typed_partitions(d, k):
            for p in range(1, 4):
                for prime in ([False, True] if p == k else [False]):
                    for term in pieri_terms(lam, p, k, Group.D, prime):
                        assert isinstance(term.multiplicity, int)
                        assert term.multiplicity > 0


@pytest.mark.slow
def test_orthogonal_product_matches_rewriting():
    k = 1
    for d in range(0, 4):
        for lam in typed_partitions(d, k):
            for p in range(1, 3):
                for prime in ([False, True] if p == k else [False]):
                    x = gen("b'" if prime else "b", p) * eta_polynomial(lam)
                    assert pieri_product(lam, p, k, Group.D, prime) == eta_basis_expand(x, k).coeffs


def test_witness_is_attached_on_request():
    terms = pieri_terms((2, 1), 3, 1, Group.C, witness=True)
    assert all(t.witness is not None for t in terms)
    assert "witness" in terms[0].to_dict()
    assert all(t.witness is None for t in pieri_terms((2, 1), 3, 1, Group.C))


# ─────────────────────────────────────────────
# k-horizontal strips
# ─────────────────────────────────────────────
@pytest.mark.parametrize(
    "outer, inner, k, expected",
    [
        ((3,), (1,), 1, 1),
        ((2, 1), (2, 1), 1, 0),
        ((4, 2), (4, 2), 2, 0),
        ((3,), (2, 1), 1, None),
    ],
)
def test_k_horizontal_strip(outer, inner, k, expected):
    assert k_horizontal_strip(outer, inner, k) == expected


def test_strip_at_level_zero_counts_components():
    assert k_horizontal_strip((4, 2), (3, 2), 0) == 1
    assert strip_witness((4, 2), (3, 2), 0)[1].free_components
