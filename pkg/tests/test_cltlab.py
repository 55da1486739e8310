from math import sqrt

import numpy as np
import pytest
from scipy.special import ndtr

from permclt.cltlab import (
    bivariate_experiment,
    build_graph,
    check_interaction_rule,
    coincidence_rate,
    degree_bound,
    delta_j,
    ks_to_normal,
    mc_statistic,
    pair_statistic_fn,
    theorem4_scaling,
    theorem4_terms,
    w1_to_normal,
)
from permclt.exact import (
    descent_mean,
    descent_variance,
    eulerian_row,
    kolmogorov_to_normal,
    t_variance,
)
from permclt.perm import PointConfiguration, random_points
from permclt.rng import SeededRng
from permclt.stats import descent_components, per_window_local, uniform_local


def grid_config(coords):
    return PointConfiguration(tuple(coords))


class TestGraph:
    def test_known_edges(self):
        # three points strung along the diagonal: consecutive ranks touch
        cfg = grid_config([(0.1, 0.1), (0.5, 0.5), (0.9, 0.9)])
        g = build_graph(cfg, 1)
        assert g.edges == frozenset({(1, 2), (2, 3)})
        assert degree_bound(g) == 2

    def test_threshold_widens(self):
        cfg = grid_config([(0.1, 0.1), (0.5, 0.5), (0.9, 0.9)])
        g = build_graph(cfg, 2)
        assert (1, 3) in g.edges

    def test_edge_when_either_axis_close(self):
        # far apart in x, adjacent in y
        cfg = grid_config([(0.05, 0.4), (0.5, 0.5), (0.95, 0.45)])
        g = build_graph(cfg, 1)
        assert (1, 3) in g.edges

    def test_threshold_validation(self):
        cfg = grid_config([(0.1, 0.1), (0.5, 0.5)])
        with pytest.raises(ValueError):
            build_graph(cfg, 0)


class TestDeltaJ:
    def test_delta_bound_for_descent_pair(self):
        f = pair_statistic_fn("T")
        rng = SeededRng(2)
        for _ in range(30):
            cfg = random_points(12, rng)
            cfg2 = random_points(12, rng)
            for j in (1, 5, 12):
                assert abs(delta_j(f, cfg, cfg2, j)) <= 4

    def test_index_validation(self):
        f = pair_statistic_fn("T")
        rng = SeededRng(3)
        cfg = random_points(5, rng)
        cfg2 = random_points(5, rng)
        with pytest.raises(IndexError):
            delta_j(f, cfg, cfg2, 0)
        with pytest.raises(ValueError):
            delta_j(f, cfg, random_points(6, rng), 1)


class TestEmpiricalDistances:
    def test_ks_of_perfect_normal_quantiles(self):
        n = 10_000
        q = np.array([(i + 0.5) / n for i in range(n)])
        x = np.sort(np.array([_ndtri(p) for p in q]))
        assert ks_to_normal(x) <= 1.0 / n + 1e-9
        assert w1_to_normal(x) < 1e-9

    def test_ks_of_shifted_sample(self):
        x = np.linspace(-3, 3, 1000) + 10.0
        assert ks_to_normal(x) > 0.99

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ks_to_normal(np.array([]))


def _ndtri(p):
    from scipy.special import ndtri

    return float(ndtri(p))


class TestMcStatistic:
    def test_deterministic_and_thread_independent(self):
        a = mc_statistic("T", 30, 10_000, SeededRng(5), threads=1)
        b = mc_statistic("T", 30, 10_000, SeededRng(5), threads=3)
        assert a == b
        c = mc_statistic("T", 30, 10_000, SeededRng(6), threads=1)
        assert c.ks != a.ks

    def test_exact_standardization_tags(self):
        a = mc_statistic("D", 20, 2_000, SeededRng(1))
        assert a.standardization == "exact"
        b = mc_statistic("peaks", 20, 2_000, SeededRng(1))
        assert b.standardization == "sample"

    def test_mean_near_exact_value(self):
        rep = mc_statistic("T", 40, 40_000, SeededRng(8))
        assert abs(rep.mean - 39.0) < 0.1  # E(T) = n - 1

    def test_ks_estimator_consistent_with_exact_law(self):
        # for D the sampled ks must sit within estimator error of the
        # population value computed from the exact distribution
        n, N = 100, 40_000
        rep = mc_statistic("D", n, N, SeededRng(12))
        exact = kolmogorov_to_normal(
            eulerian_row(n), descent_mean(n), sqrt(float(descent_variance(n)))
        )
        assert abs(rep.ks - exact) <= 2.0 / sqrt(N)

    def test_degenerate_statistic_rejected(self):
        flat = uniform_local(2, {(1, 2): 0.0, (2, 1): 0.0})
        with pytest.raises(ValueError):
            mc_statistic(flat, 10, 100, SeededRng(0))

    def test_per_window_needs_matching_size(self):
        tables = [{(1, 2): 1.0, (2, 1): 0.0}] * 4
        stat = per_window_local(2, tables)
        with pytest.raises(ValueError):
            mc_statistic(stat, 9, 100, SeededRng(0))
        rep = mc_statistic(stat, 5, 500, SeededRng(0))
        assert rep.samples == 500

    def test_label_override(self):
        rep = mc_statistic("T", 10, 100, SeededRng(0), label="local:x.json")
        assert rep.statistic == "local:x.json"


class TestBivariate:
    def test_correlation_near_exact_at_n4(self):
        rep = bivariate_experiment(4, 30_000, SeededRng(9))
        assert rep.corr_target == 0.9
        assert abs(rep.corr - 0.9) < 0.03

    def test_deterministic(self):
        a = bivariate_experiment(10, 5_000, SeededRng(1), threads=1)
        b = bivariate_experiment(10, 5_000, SeededRng(1), threads=2)
        assert a == b


class TestCoincidence:
    def test_rate_bounds_and_determinism(self):
        a = coincidence_rate(10, 20_000, SeededRng(2))
        assert 0.0 < a.rate < 1.0
        assert a.rate_sqrt_n == pytest.approx(a.rate * sqrt(10))
        assert a == coincidence_rate(10, 20_000, SeededRng(2), threads=2)


class TestInteraction:
    def test_descent_pair_clean_run(self):
        rep = check_interaction_rule("T", 10, 4_000, SeededRng(7))
        assert rep.violations == 0
        assert rep.checked > 0
        assert rep.m_observed <= 4
        assert rep.delta_observed <= 10
        assert rep.threshold == 1 and rep.ext_threshold == 5

    def test_peaks_clean_run(self):
        rep = check_interaction_rule("peaks", 14, 2_000, SeededRng(8))
        assert rep.violations == 0
        assert rep.m_observed <= 12
        assert rep.threshold == 2 and rep.ext_threshold == 6

    def test_incremental_and_stacked_paths_agree(self):
        # descents as a generic degree-2 local statistic must reproduce
        # the specialized descent path exactly, trial by trial
        a = check_interaction_rule("T", 9, 4_000, SeededRng(7))
        b = check_interaction_rule(descent_components(), 9, 4_000, SeededRng(7))
        assert a.violations == b.violations
        assert a.checked == b.checked
        assert a.m_observed == b.m_observed
        assert a.delta_abs_third == b.delta_abs_third
        assert a.delta_abs_mean == b.delta_abs_mean

    def test_thread_independence(self):
        a = check_interaction_rule("T", 12, 3_000, SeededRng(4), threads=1)
        b = check_interaction_rule("T", 12, 3_000, SeededRng(4), threads=3)
        assert a == b

    def test_threshold_override_recorded(self):
        rep = check_interaction_rule("T", 10, 500, SeededRng(1), threshold=3)
        assert rep.threshold == 3 and rep.ext_threshold == 7

    def test_per_window_statistic_rejected(self):
        tables = [{(1, 2): 1.0, (2, 1): 0.0}] * 9
        stat = per_window_local(2, tables)
        with pytest.raises(ValueError):
            check_interaction_rule(stat, 10, 100, SeededRng(0))

    def test_delta_literal_at_least_axis_count(self):
        rep = check_interaction_rule("T", 30, 2_000, SeededRng(3))
        assert rep.delta_literal_observed >= rep.delta_observed


class TestBoundTerms:
    def test_arithmetic(self):
        out = theorem4_terms(4.0, 10.0, 2.0, 100, [8.0] * 100)
        assert out["term1"] == pytest.approx(sqrt(100) / 4.0 * 16.0 * 10.0)
        assert out["term2"] == pytest.approx(800.0 / 16.0)

    def test_sigma_validated(self):
        with pytest.raises(ValueError):
            theorem4_terms(4.0, 10.0, 0.0, 10, [1.0])

    def test_scaling_slope_formula(self):
        rep = theorem4_scaling(SeededRng(2), sizes=(50, 200), trials=200)
        for size, t1 in zip(rep.sizes, rep.term1):
            want = sqrt(size) / float(t_variance(size)) * 160.0
            assert t1 == pytest.approx(want)
        slope = np.polyfit(np.log(rep.sizes), np.log(rep.term1), 1)[0]
        assert rep.slope_term1 == pytest.approx(slope)
