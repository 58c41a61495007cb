from itertools import permutations, product

import pytest

from schubertine.combinat import (
    BOX,
    Box,
    Flavor,
    Group,
    SignedPermutation,
    StripKind,
    TypedPartition,
    box_related,
    code_and_shape_A,
    conjugate,
    fits_rectangle,
    grassmannian_bijection,
    grassmannian_inverse,
    index_function,
    is_k_strict,
    make_partition,
    parse_label,
    partitions,
    shape_C,
    shape_D,
    strip_kind,
    typed_partitions,
)
from schubertine.errors import PreconditionError


def _signed_permutations(n, group):
    for values in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            if group == Group.D and signs.count(-1) % 2:
                continue
            yield SignedPermutation(tuple(v * s for v, s in zip(values, signs)), group)


def _bfs_lengths(n, group):
    identity = SignedPermutation.identity(n, group)
    seen = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in identity.generators():
                v = w.right_mul(g)
                if v not in seen:
                    seen[v] = seen[w] + 1
                    nxt.append(v)
        frontier = nxt
    return seen


# ─────────────────────────────────────────────
# Partitions
# ─────────────────────────────────────────────
@pytest.mark.parametrize(
    "lam, expected",
    [((1,), (1,)), ((), ()), ((4, 3, 3, 2), (4, 4, 3, 1))],
)
def test_conjugate(lam, expected):
    assert conjugate(lam) == expected


def test_conjugate_is_an_involution():
    for n in range(13):
        for lam in partitions(n):
            assert conjugate(conjugate(lam)) == lam


def test_make_partition_drops_trailing_zeros():
    assert make_partition((3, 1, 0, 0)) == (3, 1)
    with pytest.raises(PreconditionError):
        make_partition((1, 2))


@pytest.mark.parametrize(
    "lam, mu, kind",
    [
        ((2, 2, 1), (5, 2, 1), StripKind.HORIZONTAL),
        ((2, 1), (2, 1), StripKind.HORIZONTAL),
        ((1,), (2, 2), StripKind.NEITHER),
        ((1,), (1, 1, 1), StripKind.VERTICAL),
        ((3,), (2, 1), StripKind.NOT_CONTAINED),
    ],
)
def test_strip_kind(lam, mu, kind):
    assert strip_kind(lam, mu) == kind


@pytest.mark.parametrize(
    "b1, b2, k, flavor, expected",
    [
        (Box(1, 3), Box(1, 3), 2, Flavor.K, True),
        (Box(1, 2), Box(2, 3), 2, Flavor.K, True),
        (Box(1, 2), Box(1, 3), 2, Flavor.K_PRIME, True),
        (Box(1, 1), Box(1, 2), 2, Flavor.K, False),
    ],
)
def test_box_related(b1, b2, k, flavor, expected):
    assert box_related(b1, b2, k, flavor) is expected
    assert box_related(b2, b1, k, flavor) is expected


def test_typed_partition_types():
    assert TypedPartition.parse("3,2,2:2", 2) == TypedPartition((3, 2, 2), 2, 2)
    assert TypedPartition.parse("3,1", 2).type == 0
    assert TypedPartition.parse("3,1", 0).type == 1
    assert TypedPartition((5, 3, 2), 2, 1).ell_k == 2
    with pytest.raises(PreconditionError):
        TypedPartition.parse("2,2", 2)
    with pytest.raises(PreconditionError):
        TypedPartition((2, 2), 2, 0)
    with pytest.raises(PreconditionError):
        TypedPartition((3, 3), 2, 0)


def test_typed_partitions_split_on_part_k():
    labels = {lam.label for lam in typed_partitions(3, 1)}
    assert labels == {"3:0", "2,1:1", "2,1:2", "1,1,1:1", "1,1,1:2"}


def test_k_strict():
    assert is_k_strict((2, 2, 1), 2)
    assert not is_k_strict((3, 3), 2)
    assert parse_label("", 1, False) == ()


# ─────────────────────────────────────────────
# Signed permutations
# ─────────────────────────────────────────────
def test_signed_permutation_validation():
    with pytest.raises(PreconditionError):
        SignedPermutation((1, -2, 3), Group.D)
    with pytest.raises(PreconditionError):
        SignedPermutation((1, -2), Group.A)
    with pytest.raises(PreconditionError):
        SignedPermutation((1, 3), Group.C)


def test_lengths_and_descents():
    w = SignedPermutation.from_string("3,-1,2,5,4", Group.C)
    assert w.length == 4
    assert w.descents() == [1, 4]
    v = SignedPermutation((-2, -1, 3), Group.D)
    assert v.descents() == [BOX]
    assert v.length == 1


def test_code_and_shape_A():
    w = SignedPermutation((2, 1, 5, 4, 3), Group.A)
    assert code_and_shape_A(w) == ((1, 0, 2, 1), (2, 1, 1))
    assert code_and_shape_A(SignedPermutation.identity(4, Group.A))[1] == ()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_shape_of_longest_element(n):
    assert shape_C(SignedPermutation.longest(n, Group.C))[2] == tuple(range(2 * n - 1, 0, -2))
    if n >= 2:
        assert shape_D(SignedPermutation.longest(n, Group.D))[2] == tuple(range(2 * n - 2, 0, -2))


def test_longest_elements_of_type_d():
    assert SignedPermutation.longest(2, Group.D).window == (-1, -2)
    assert SignedPermutation.longest(3, Group.D).window == (1, -2, -3)
    assert SignedPermutation.longest(4, Group.D).window == (-1, -2, -3, -4)
    assert all(SignedPermutation.longest(n, Group.D).length == n * (n - 1) for n in range(2, 6))


def test_shape_D_example():
    v = SignedPermutation((-3, 5, -1, 2, 4), Group.D)
    assert shape_D(v)[2] == (3, 1, 1)
    assert shape_C(SignedPermutation.identity(3, Group.C)) == ((), (), ())


def test_shape_weight_equals_length_in_W4():
    lengths = _bfs_lengths(4, Group.C)
    assert set(lengths) == set(_signed_permutations(4, Group.C))
    for w, ell in lengths.items():
        assert w.length == ell
        assert sum(shape_C(w)[2]) == ell


def test_length_formula_in_D4():
    lengths = _bfs_lengths(4, Group.D)
    assert set(lengths) == set(_signed_permutations(4, Group.D))
    for w, ell in lengths.items():
        assert w.length == ell
        assert sum(shape_D(w)[2]) == ell


# ─────────────────────────────────────────────
# Grassmannian elements and index functions
# ─────────────────────────────────────────────
def test_grassmannian_bijection_examples():
    assert grassmannian_bijection((), 2, Group.A, 3) == SignedPermutation.identity(3, Group.A)
    v = grassmannian_bijection(TypedPartition((2, 2, 1), 2, 2), 2, Group.D)
    assert v == SignedPermutation((-3, 5, -1, 2, 4), Group.D)


def test_typed_round_trip_in_rectangle():
    for d in range(0, 13):
        for lam in typed_partitions(d, 2):
            if fits_rectangle(lam.parts, 3, 4):
                w = grassmannian_bijection(lam, 2, Group.D)
                assert grassmannian_inverse(w, 2) == lam


def test_symplectic_round_trip():
    for d in range(0, 8):
        for k in range(0, 3):
            for lam in partitions(d):
                if is_k_strict(lam, k):
                    w = grassmannian_bijection(lam, k, Group.C)
                    assert grassmannian_inverse(w, k) == lam
                    assert w.length == d


def test_grassmannian_bijection_rejects_non_strict():
    with pytest.raises(PreconditionError):
        grassmannian_bijection((3, 3), 1, Group.C)


@pytest.mark.parametrize(
    "lam, n, k, group, expected",
    [
        ((), 2, 0, Group.C, (3, 4)),
        ((1,), 2, 1, Group.C, (3,)),
    ],
)
def test_index_function(lam, n, k, group, expected):
    assert index_function(lam, n, k, group) == expected


def test_index_function_is_strictly_increasing():
    n, k = 4, 1
    for d in range(0, 9):
        for lam in partitions(d):
            if is_k_strict(lam, k) and fits_rectangle(lam, n - k, n + k):
                seq = index_function(lam, n, k, Group.C)
                assert all(a < b for a, b in zip(seq, seq[1:]))
        for lam in typed_partitions(d, k):
            if fits_rectangle(lam.parts, n - k, n + k - 1):
                seq = index_function(lam, n, k, Group.D)
                assert all(a < b for a, b in zip(seq, seq[1:]))


def test_index_function_rejects_large_shapes():
    with pytest.raises(PreconditionError):
        index_function((5,), 2, 0, Group.C)
