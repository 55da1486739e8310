import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permclt.metrics import (
    METRIC_KINDS,
    descent_graph_distance,
    distance,
    edge_equality_fraction,
    invariance_check,
    search_triangle_violations,
)
from permclt.perm import Permutation, compose, identity, inverse, parse_perm
from permclt.rng import SeededRng
from permclt.stats import t_statistic

GRAHAM_PI = parse_perm("3 4 1 2 5")
GRAHAM_SIGMA = parse_perm("1 4 5 2 3")

perms5 = st.permutations([1, 2, 3, 4, 5]).map(lambda e: Permutation(tuple(e)))


def test_metric_kinds_frozen():
    assert set(METRIC_KINDS) == {
        "kendall", "cayley", "ulam", "hamming", "footrule", "rho_squared",
        "descent_edge", "descent_graph",
    }


def test_known_distances_on_graham_pair():
    p, q = GRAHAM_PI, GRAHAM_SIGMA
    # worked by hand: sigma o pi^-1 = (5 2 1 4 3), pi o sigma^-1 = (3 2 5 4 1)
    assert distance("kendall", p, q) == 6
    assert distance("hamming", p, q) == 3
    assert distance("footrule", p, q) == 8
    assert distance("rho_squared", p, q) == 24
    assert distance("cayley", p, q) == 2
    assert distance("ulam", p, q) == 3
    assert distance("descent_edge", p, q) == 6


def test_descent_edge_on_graham_legs():
    ident = identity(5)
    assert distance("descent_edge", GRAHAM_PI, ident) == 2
    assert distance("descent_edge", ident, GRAHAM_SIGMA) == 2
    assert distance("descent_edge", GRAHAM_PI, GRAHAM_SIGMA) == 6


def test_distance_rejects_graph_kind():
    with pytest.raises(ValueError):
        distance("descent_graph", GRAHAM_PI, GRAHAM_SIGMA)
    with pytest.raises(ValueError):
        distance("nope", GRAHAM_PI, GRAHAM_SIGMA)


@given(perms5, perms5)
def test_metric_axioms_spot(p, q):
    for kind in METRIC_KINDS[:-1]:
        d = distance(kind, p, q)
        assert d >= 0
        assert (d == 0) == (p == q)
        assert d == distance(kind, q, p)


@given(perms5, perms5)
def test_kendall_is_inversions_of_relative_arrangement(p, q):
    rel = compose(q, inverse(p))
    inv = sum(
        1
        for i in range(1, 6)
        for j in range(i + 1, 6)
        if rel(i) > rel(j)
    )
    assert distance("kendall", p, q) == inv


def test_graph_distance_on_graham_pair_strictly_smaller():
    assert descent_graph_distance(GRAHAM_PI, GRAHAM_SIGMA) == 4
    assert distance("descent_edge", GRAHAM_PI, GRAHAM_SIGMA) == 6


def test_graph_distance_identity_and_symmetry():
    assert descent_graph_distance(GRAHAM_PI, GRAHAM_PI) == 0
    assert descent_graph_distance(GRAHAM_PI, GRAHAM_SIGMA) == (
        descent_graph_distance(GRAHAM_SIGMA, GRAHAM_PI)
    )


@given(perms5, perms5)
@settings(max_examples=60)
def test_graph_at_most_edge(p, q):
    assert descent_graph_distance(p, q) <= distance("descent_edge", p, q)


@given(perms5, perms5, perms5)
@settings(max_examples=60)
def test_graph_triangle_inequality(p, q, r):
    assert descent_graph_distance(p, r) <= (
        descent_graph_distance(p, q) + descent_graph_distance(q, r)
    )


@given(perms5, perms5, perms5)
@settings(max_examples=40)
def test_graph_right_invariance(p, q, eta):
    assert descent_graph_distance(p, q) == descent_graph_distance(
        compose(p, eta), compose(q, eta)
    )


def test_graph_cap():
    with pytest.raises(ValueError):
        descent_graph_distance(identity(8), identity(8))


def test_edge_equality_fraction_small():
    # at n = 3 the shortest path never improves on the direct edge
    assert edge_equality_fraction(3) == 1.0
    assert 0.0 < edge_equality_fraction(5) <= 1.0


def test_violations_empty_at_n3():
    assert search_triangle_violations(3).triples == ()


def test_violations_at_n5_contain_graham():
    rep = search_triangle_violations(5)
    found = {
        (t.pi.entries, t.sigma.entries, t.d_pi_id, t.d_id_sigma, t.d_pi_sigma)
        for t in rep.triples
    }
    assert (GRAHAM_PI.entries, GRAHAM_SIGMA.entries, 2, 2, 6) in found
    # every listed triple is a genuine failure of the triangle inequality
    for t in rep.triples:
        assert t.d_pi_id + t.d_id_sigma < t.d_pi_sigma
        assert t.d_pi_id == t_statistic(t.pi)
        assert t.d_pi_sigma == distance("descent_edge", t.pi, t.sigma)


def test_violations_cap():
    with pytest.raises(ValueError):
        search_triangle_violations(7)


@pytest.mark.parametrize("kind", METRIC_KINDS)
def test_right_invariance_all_kinds(kind):
    n = 6 if kind == "descent_graph" else 8
    res = invariance_check(kind, 120, SeededRng(10), n=n)
    assert res["right_invariant"] is True


@pytest.mark.parametrize(
    "kind,expect",
    [
        ("kendall", False),
        ("cayley", True),
        ("ulam", False),
        ("hamming", True),
        ("footrule", False),
        ("rho_squared", False),
        ("descent_edge", False),
        ("descent_graph", False),
    ],
)
def test_left_invariance_by_kind(kind, expect):
    n = 6 if kind == "descent_graph" else 8
    res = invariance_check(kind, 200, SeededRng(11), n=n)
    assert res["left_invariant"] is expect


def test_invariance_graph_needs_small_n():
    with pytest.raises(ValueError):
        invariance_check("descent_graph", 5, SeededRng(0), n=8)
