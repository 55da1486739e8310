from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permclt.exact import (
    ExactDistribution,
    bivariate_brute,
    bivariate_gf,
    bivariate_recurrence,
    carlitz_support_check,
    carlitz_zero_predicted,
    descent_covariance_exact,
    descent_mean,
    descent_pair_correlation,
    descent_pair_covariance,
    descent_pair_product_mean,
    descent_product_mean_exact,
    descent_variance,
    eulerian_row,
    irwin_hall_cell,
    kolmogorov_to_normal,
    moments,
    pitman_bound,
    t_distribution,
    t_mean,
    t_variance,
    verify_euler_identity,
)
from permclt.rng import SeededRng


def test_eulerian_rows_known():
    assert [c for _, c in eulerian_row(4).pairs] == [1, 11, 11, 1]
    assert [c for _, c in eulerian_row(5).pairs] == [1, 26, 66, 26, 1]
    assert [c for _, c in eulerian_row(1).pairs] == [1]


@pytest.mark.parametrize("n", range(1, 30))
def test_eulerian_row_sums_and_symmetry(n):
    counts = [c for _, c in eulerian_row(n).pairs]
    assert sum(counts) == factorial(n)
    assert counts == counts[::-1]


def test_eulerian_cap():
    with pytest.raises(ValueError):
        eulerian_row(501)


def test_closed_form_moment_values():
    assert t_mean(9) == 8
    assert t_variance(9) == Fraction(23, 9)
    assert descent_mean(5) == 2
    assert descent_variance(5) == Fraction(1, 2)
    assert descent_pair_covariance(5) == Fraction(2, 5)
    assert descent_pair_product_mean(5) == 4 + Fraction(2, 5)
    assert descent_pair_correlation(3) == 1
    assert descent_pair_correlation(4) == Fraction(9, 10)


@pytest.mark.parametrize("n", range(2, 8))
def test_brute_moments_match_formulas(n):
    dist = t_distribution(bivariate_brute(n))
    m = moments(dist)
    assert m.mean == t_mean(n)
    assert m.variance == t_variance(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_three_constructions_agree_small(n):
    assert bivariate_brute(n).cells == bivariate_gf(n).cells
    assert bivariate_gf(n).cells == bivariate_recurrence(n).cells


def test_recurrence_base_case():
    assert bivariate_recurrence(1).cell(1, 1) == 1


@pytest.mark.parametrize("n", range(2, 8))
def test_table_symmetry_and_row_sums(n):
    table = bivariate_recurrence(n)
    assert table.is_symmetric()
    row = [c for _, c in eulerian_row(n).pairs]
    assert table.row_sums() == row


def test_covariance_by_enumeration_matches_formula():
    for n in range(2, 8):
        assert descent_covariance_exact(n) == descent_pair_covariance(n)
        assert descent_product_mean_exact(n) == descent_pair_product_mean(n)


def test_brute_cap():
    with pytest.raises(ValueError):
        bivariate_brute(11)
    with pytest.raises(ValueError):
        bivariate_gf(61)


def test_irwin_hall_cells_known():
    assert irwin_hall_cell(2, 0) == Fraction(1, 2)
    assert irwin_hall_cell(2, 1) == Fraction(1, 2)
    # cells sum to one
    for n in (1, 3, 7, 12):
        assert sum(irwin_hall_cell(n, j) for j in range(n)) == 1
    with pytest.raises(ValueError):
        irwin_hall_cell(3, 3)


def test_irwin_hall_against_monte_carlo():
    # independent oracle: cell masses of a sum of uniforms
    n = 5
    sums = SeededRng(100).uniform((200_000, n)).sum(axis=1)
    freq = np.bincount(sums.astype(int), minlength=n) / len(sums)
    for j in range(n):
        assert abs(freq[j] - float(irwin_hall_cell(n, j))) < 0.01


@pytest.mark.parametrize("n", range(1, 8))
def test_euler_identity(n):
    assert verify_euler_identity(n, n + 12)


def test_euler_identity_needs_room():
    with pytest.raises(ValueError):
        verify_euler_identity(5, 6)


@pytest.mark.parametrize("n", range(2, 8))
def test_carlitz_prediction_matches_brute_zeros(n):
    table = bivariate_brute(n)
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            assert (table.cell(r, s) == 0) == carlitz_zero_predicted(n, r, s), (
                n, r, s,
            )
    assert carlitz_support_check(table)


def test_carlitz_specific_nonzero_cell():
    # the one-sided non-strict reading would call this cell empty
    assert not carlitz_zero_predicted(4, 3, 2)
    assert bivariate_brute(4).cell(3, 2) == 1


def test_kolmogorov_two_point_law():
    dist = ExactDistribution(2, ((-1, 1), (1, 1)))
    from scipy.special import ndtr

    want = float(0.5 - ndtr(-1.0))
    got = kolmogorov_to_normal(dist, 0, 1.0)
    assert abs(got - want) < 1e-12


def test_kolmogorov_rejects_bad_sd():
    with pytest.raises(ValueError):
        kolmogorov_to_normal(eulerian_row(4), descent_mean(4), 0.0)


@pytest.mark.parametrize("n", (10, 50, 100))
def test_pitman_bound_holds_on_exact_law(n):
    ks = kolmogorov_to_normal(
        eulerian_row(n), descent_mean(n), float(descent_variance(n)) ** 0.5
    )
    assert ks < pitman_bound(n)


def test_moments_of_simple_distribution():
    dist = ExactDistribution(2, ((0, 1), (1, 1)))
    m = moments(dist)
    assert m.mean == Fraction(1, 2)
    assert m.variance == Fraction(1, 4)


def test_distribution_validation():
    with pytest.raises(ValueError):
        ExactDistribution(2, ((1, 1), (0, 1)))
    with pytest.raises(ValueError):
        ExactDistribution(2, ((0, -1),))


@settings(max_examples=25)
@given(st.integers(2, 9), st.integers(2, 9))
def test_gf_recurrence_agree_random_sizes(n, m):
    # redundant with the parametrized sweep above but exercises caching
    assert bivariate_gf(n).cells == bivariate_recurrence(n).cells
    assert bivariate_gf(m).row_sums() == [
        c for _, c in eulerian_row(m).pairs
    ]
