from itertools import permutations

import pytest

from schubertine.combinat import Group, SignedPermutation
from schubertine.errors import PreconditionError
from schubertine.freering import FreeElement, gen
from schubertine.series import e_poly
from schubertine.stanley import (
    borel_specialization,
    flag_coefficients,
    nilcoxeter_mixed_stanley,
    reduced_words,
    schubert_poly,
    schubert_poly_compatible,
    stanley_coefficients,
    stanley_series_from_tree,
    transition_tree,
)

G21543 = SignedPermutation((2, 1, 5, 4, 3), Group.A)
J31254 = SignedPermutation((3, -1, 2, 5, 4), Group.C)


def _symmetric_group(n):
    return [SignedPermutation(values, Group.A) for values in permutations(range(1, n + 1))]


# ─────────────────────────────────────────────
# Transition trees
# ─────────────────────────────────────────────
def test_identity_has_one_leaf():
    assert stanley_coefficients(SignedPermutation.identity(3, Group.A)) == {(): 1}


def test_type_a_tree():
    assert stanley_coefficients(G21543) == {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1}


def test_type_c_tree():
    assert stanley_coefficients(J31254, 1) == {(4,): 1, (3, 1): 2, (2, 1, 1): 1}


def test_grassmannian_root_is_a_leaf():
    tree = transition_tree(SignedPermutation((1, 3, 2), Group.A))
    assert tree.root.is_leaf
    assert tree.root.shape == (1,)


@pytest.mark.parametrize("w, k", [(G21543, 0), (J31254, 1)])
def test_transitions_preserve_length(w, k):
    tree = transition_tree(w, k)
    assert all(node.w.length == w.length for node in tree.nodes())
    assert all(sum(leaf.shape) == w.length for leaf in tree.leaves())


def test_tree_dict():
    data = transition_tree(J31254, 1).to_dict()
    assert set(data) == {"group", "k", "nodes", "edges"}
    assert len(data["edges"]) == len(data["nodes"]) - 1
    assert sum(1 for node in data["nodes"] if "shape" in node) == 4


def test_tree_needs_increasing_element():
    with pytest.raises(PreconditionError):
        transition_tree(SignedPermutation((-1, 2), Group.C), 1)


# ─────────────────────────────────────────────
# nilCoxeter algebra
# ─────────────────────────────────────────────
def test_nilcoxeter_matches_tree_in_type_a():
    assert nilcoxeter_mixed_stanley(G21543, 0, 3) == stanley_series_from_tree(G21543, 0, 3)


@pytest.mark.slow
def test_nilcoxeter_matches_tree_in_type_c():
    assert nilcoxeter_mixed_stanley(J31254, 1, 3) == stanley_series_from_tree(J31254, 1, 3)


# ─────────────────────────────────────────────
# Schubert polynomials
# ─────────────────────────────────────────────
def test_small_schubert_polynomials():
    x1 = gen("x", 1)
    assert schubert_poly(SignedPermutation((2, 1), Group.A), 2) == x1
    assert schubert_poly(SignedPermutation.identity(3, Group.A), 3) == FreeElement.one()
    assert schubert_poly(SignedPermutation((3, 1, 2), Group.A), 3) == x1**2
    assert schubert_poly(SignedPermutation((-1, 2), Group.C), 2) == e_poly(1, 2)


def test_schubert_rank_check():
    with pytest.raises(PreconditionError):
        schubert_poly(SignedPermutation((1, 3, 2), Group.A), 2)


def test_explicit_group_must_match():
    w = SignedPermutation((-1, 2), Group.C)
    assert schubert_poly(w, 2, Group.C) == schubert_poly(w, 2)
    assert stanley_coefficients(G21543, 0, Group.A) == stanley_coefficients(G21543)
    with pytest.raises(PreconditionError):
        schubert_poly(w, 2, Group.D)
    with pytest.raises(PreconditionError):
        stanley_coefficients(G21543, group=Group.C)


def test_reduced_words():
    assert reduced_words(SignedPermutation((3, 2, 1), Group.A)) == ((1, 2, 1), (2, 1, 2))


@pytest.mark.parametrize("w", _symmetric_group(4))
def test_compatible_sequences_agree(w):
    assert schubert_poly(w, 4) == schubert_poly_compatible(w, 4)


# ─────────────────────────────────────────────
# Flag coefficients
# ─────────────────────────────────────────────
def test_grassmannian_flag_coefficients():
    assert flag_coefficients(SignedPermutation((3, 1, 2), Group.A), (1, 2)) == {((2,), ()): 1}
    assert flag_coefficients(G21543, (1, 2, 3, 4)) != {}


def test_single_step_flag_is_the_stanley_expansion():
    w = SignedPermutation((1, 4, 2, 3), Group.A)
    assert flag_coefficients(w, (2,)) == {(lam,): c for lam, c in stanley_coefficients(w).items()}


@pytest.mark.parametrize("n", [3, 4])
def test_borel_specialization_recovers_schubert_polynomials(n):
    a = tuple(range(1, n))
    for w in _symmetric_group(n):
        assert borel_specialization(flag_coefficients(w, a)) == schubert_poly(w, n)


def test_flag_rejects_extra_descents():
    with pytest.raises(PreconditionError):
        flag_coefficients(SignedPermutation((1, 3, 2), Group.A), (1,))
    with pytest.raises(PreconditionError):
        flag_coefficients(SignedPermutation((2, 1), Group.A), (2, 1))
