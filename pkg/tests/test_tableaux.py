import pytest

from schubertine.combinat import Group, TypedPartition
from schubertine.errors import PreconditionError
from schubertine.series import TruncatedSeries, bialternant_schur, generator_series, substitute_eta, substitute_theta
from schubertine.tableaux import (
    Tableau,
    contract_grouped,
    enumerate_tableaux_A,
    eta_series_via_bitableaux,
    tableau_grouped_expansion,
    theta_series_via_bitableaux,
)


@pytest.mark.parametrize("lam, max_entry, count", [((1,), 2, 2), ((2, 1), 3, 8), ((1, 1, 1), 2, 0)])
def test_tableau_counts(lam, max_entry, count):
    assert len(list(enumerate_tableaux_A(lam, max_entry))) == count


def test_tableau_sum_is_a_schur_polynomial():
    total = TruncatedSeries(3, 0, 3)
    for t in enumerate_tableaux_A((2, 1), 3):
        total = total + t.weight_series(3, 0, 3)
    assert total.terms == bialternant_schur((2, 1), 3).terms


def test_tableau_rendering():
    t = Tableau(((), (2,), (2, 1)))
    assert t.content == (2, 1)
    assert t.rows() == [["1", "1"], ["2"]]
    assert t.to_dict()["chain"] == ["", "2", "2,1"]


def test_negative_entry_bound():
    with pytest.raises(PreconditionError):
        list(enumerate_tableaux_A((1,), -1))


# ─────────────────────────────────────────────
# Theta polynomials
# ─────────────────────────────────────────────
@pytest.mark.parametrize("p, k", [(1, 0), (3, 1), (2, 2)])
def test_single_row(p, k):
    m = 3
    expected = TruncatedSeries(m, k, p)
    for j in range(p + 1):
        expected = expected + generator_series("Q", p - j, m, k, p) * generator_series("e", j, m, k, p)
    assert theta_series_via_bitableaux((p,), k, m) == expected


@pytest.mark.parametrize("p, k", [(2, 1), (3, 2)])
def test_single_column(p, k):
    m = 3
    expected = TruncatedSeries(m, k, p)
    for j in range(p + 1):
        expected = expected + generator_series("Q", p - j, m, k, p) * generator_series("h", j, m, k, p)
    assert theta_series_via_bitableaux((1,) * p, k, m) == expected


@pytest.mark.parametrize("lam, k", [((2, 1), 0), ((3, 1), 1), ((2, 2, 1), 2)])
def test_theta_tableau_formula(lam, k):
    series = theta_series_via_bitableaux(lam, k, 3)
    assert series == substitute_theta(lam, k, 3)
    assert series.is_nonnegative


# ─────────────────────────────────────────────
# Eta polynomials
# ─────────────────────────────────────────────
@pytest.mark.parametrize("r", [1, 2, 3])
def test_eta_row_at_level_one(r):
    m = 3
    lam = TypedPartition((r,), 1, 1 if r == 1 else 0)
    expected = generator_series("P", r, m, 1, r) + generator_series("P", r - 1, m, 1, r) * generator_series(
        "e", 1, m, 1, r
    )
    assert eta_series_via_bitableaux(lam, m) == expected


@pytest.mark.parametrize("r", [1, 2, 3])
def test_eta_column_of_type_two(r):
    m = 3
    assert eta_series_via_bitableaux(TypedPartition((1,) * r, 1, 2), m) == generator_series("P", r, m, 1, r)


@pytest.mark.parametrize("label", ["3,2,1:1", "3,1:2", "2:0"])
def test_eta_tableau_formula(label):
    lam = TypedPartition.parse(label, 1)
    assert eta_series_via_bitableaux(lam, 3) == substitute_eta(lam, 3)


def test_eta_at_level_zero_halves_q():
    lam = TypedPartition((2, 1), 0, 1)
    assert eta_series_via_bitableaux(lam, 3) == substitute_eta(lam, 3)


def test_eta_explicit_k_must_match():
    lam = TypedPartition.parse("3,1:2", 1)
    assert eta_series_via_bitableaux(lam, 3, k=1) == eta_series_via_bitableaux(lam, 3)
    with pytest.raises(PreconditionError):
        eta_series_via_bitableaux(lam, 3, k=2)


# ─────────────────────────────────────────────
# Grouped sums
# ─────────────────────────────────────────────
def test_grouped_empty_shape():
    grouped = tableau_grouped_expansion((), 1, Group.C, 3)
    assert list(grouped) == [()]
    assert grouped[()] == TruncatedSeries.const(1, 3, 1, 0)


def test_grouped_eta_row():
    m = 3
    grouped = tableau_grouped_expansion(TypedPartition((3,), 1, 0), 1, Group.D, m)
    # inner shapes wider than k pair with a vanishing Schur polynomial
    by_parts = {mu.parts: s for mu, s in grouped.items() if sum(mu.parts) <= 1}
    assert by_parts == {(): generator_series("P", 3, m, 1, 3), (1,): generator_series("P", 2, m, 1, 3)}


@pytest.mark.parametrize("lam, k, group", [((3, 1), 1, Group.C), ((2, 2, 1), 2, Group.C), ("2,1:1", 1, Group.D)])
def test_grouped_contraction(lam, k, group):
    if group == Group.D:
        lam = TypedPartition.parse(lam, k)
        expected = eta_series_via_bitableaux(lam, 3)
    else:
        expected = theta_series_via_bitableaux(lam, k, 3)
    assert contract_grouped(tableau_grouped_expansion(lam, k, group, 3), k) == expected


def test_grouped_rejects_type_a():
    with pytest.raises(PreconditionError):
        tableau_grouped_expansion((2, 1), 0, Group.A, 3)
