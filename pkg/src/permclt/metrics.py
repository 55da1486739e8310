"""Metrics on the symmetric group.

Six classical metrics, the descent edge weight d(p, q) = D(p q^-1) +
D(q p^-1) (a symmetric, right-invariant function that fails the
triangle inequality), and the shortest-path repair obtained by running
over the complete graph on S_n with those edge weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .perm import Permutation, compose, enumerate_all, identity, inverse
from .rng import SeededRng
from .stats import aux_statistics, descents, lis_length

METRIC_KINDS = (
    "footrule",
    "rho_squared",
    "kendall",
    "cayley",
    "hamming",
    "ulam",
    "descent_edge",
    "descent_graph",
)

GRAPH_CAP = 7
VIOLATION_CAP = 6


def distance(kind: str, p: Permutation, q: Permutation) -> int:
    """d(p, q) for every kind except descent_graph (see
    descent_graph_distance)."""
    if kind not in METRIC_KINDS:
        raise ValueError(f"unknown metric kind {kind!r}")
    if kind == "descent_graph":
        raise ValueError("descent_graph has a dedicated operation")
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    pe, qe = p.entries, q.entries
    if kind == "footrule":
        return sum(abs(a - b) for a, b in zip(pe, qe))
    if kind == "rho_squared":
        return sum((a - b) ** 2 for a, b in zip(pe, qe))
    if kind == "hamming":
        return sum(a != b for a, b in zip(pe, qe))
    if kind == "kendall":
        return aux_statistics(compose(q, inverse(p))).inversions
    if kind == "cayley":
        return p.n - aux_statistics(compose(q, inverse(p))).cycle_count
    if kind == "ulam":
        return p.n - lis_length(compose(p, inverse(q)).entries)
    # descent_edge
    return descents(compose(p, inverse(q))) + descents(compose(q, inverse(p)))


# --- group tables for the shortest-path metric ---------------------------


@lru_cache(maxsize=None)
def _group_tables(n: int):
    """(perms, t_values, index_lookup, encode_powers) for all of S_n.

    perms holds the n! permutations (0-based entries) in lexicographic
    order; index_lookup maps the base-n encoding of a 0-based
    permutation row to its lexicographic index.
    """
    perms = np.array(
        list(itertools.permutations(range(n))), dtype=np.int64
    )
    inv = np.argsort(perms, axis=1)
    t_vals = (
        (perms[:, 1:] < perms[:, :-1]).sum(axis=1)
        + (inv[:, 1:] < inv[:, :-1]).sum(axis=1)
    ).astype(np.int64)
    powers = n ** np.arange(n, dtype=np.int64)
    lookup = np.full(n**n, -1, dtype=np.int64)
    lookup[perms @ powers] = np.arange(len(perms))
    return perms, t_vals, lookup, powers


def _perm_index(p: Permutation) -> int:
    _, _, lookup, powers = _group_tables(p.n)
    enc = sum((v - 1) * int(powers[i]) for i, v in enumerate(p.entries))
    return int(lookup[enc])


@lru_cache(maxsize=None)
def graph_distances_from_identity(n: int) -> tuple[int, ...]:
    """Shortest-path distance from the identity to every element of S_n,
    in lexicographic order, over the complete graph with descent edge
    weights.  Right invariance of the weights makes this single table
    sufficient for every pair."""
    if n > GRAPH_CAP:
        raise ValueError(f"size {n} exceeds shortest-path cap {GRAPH_CAP}")
    perms, t_vals, lookup, powers = _group_tables(n)
    size = len(perms)
    dist = np.full(size, np.iinfo(np.int64).max, dtype=np.int64)
    done = np.zeros(size, dtype=bool)
    dist[_perm_index(identity(n))] = 0
    for _ in range(size):
        masked = np.where(done, np.iinfo(np.int64).max, dist)
        cur = int(masked.argmin())
        if masked[cur] == np.iinfo(np.int64).max:
            break
        done[cur] = True
        # neighbors of cur are g∘cur for every g, at weight T(g); the
        # target indices are a permutation of 0..n!-1, so the fancy
        # assignment has no duplicate writes
        targets = lookup[perms[:, perms[cur]] @ powers]
        cand = dist[cur] + t_vals
        dist[targets] = np.minimum(dist[targets], cand)
    return tuple(int(d) for d in dist)


def descent_graph_distance(p: Permutation, q: Permutation) -> int:
    """Minimum total descent edge weight over paths from p to q."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    if p.n > GRAPH_CAP:
        raise ValueError(f"size {p.n} exceeds shortest-path cap {GRAPH_CAP}")
    table = graph_distances_from_identity(p.n)
    return table[_perm_index(compose(q, inverse(p)))]


def edge_equality_fraction(n: int) -> float:
    """Fraction of non-equal pairs whose shortest path is the direct edge.

    By right invariance both distances depend on the pair only through
    g = q p^-1, and each g != id stands for exactly n! ordered pairs,
    so the fraction over pairs equals the fraction over group elements.
    """
    if n > GRAPH_CAP:
        raise ValueError(f"size {n} exceeds shortest-path cap {GRAPH_CAP}")
    dist = np.array(graph_distances_from_identity(n))
    _, t_vals, _, _ = _group_tables(n)
    idx = _perm_index(identity(n))
    mask = np.ones(len(dist), dtype=bool)
    mask[idx] = False
    return float((dist[mask] == t_vals[mask]).mean())


# --- triangle violations -------------------------------------------------


@dataclass(frozen=True)
class ViolationTriple:
    pi: Permutation
    sigma: Permutation
    d_pi_id: int
    d_id_sigma: int
    d_pi_sigma: int


@dataclass(frozen=True)
class ViolationReport:
    n: int
    triples: tuple[ViolationTriple, ...]

    def __post_init__(self):
        for t in self.triples:
            if t.d_pi_id + t.d_id_sigma >= t.d_pi_sigma:
                raise ValueError("listed triple is not a violation")


def search_triangle_violations(n: int, cap: int = VIOLATION_CAP) -> ViolationReport:
    """All pairs (pi, sigma) with d(pi, id) + d(id, sigma) < d(pi, sigma)
    for the descent edge weight, by exhaustive scan."""
    if n > cap:
        raise ValueError(f"size {n} exceeds violation-search cap {cap}")
    perms, t_vals, lookup, powers = _group_tables(n)
    triples = []
    for si in range(len(perms)):
        sigma_inv = np.argsort(perms[si])
        # pi ∘ sigma^-1 for every pi at once
        cross = lookup[perms[:, sigma_inv] @ powers]
        lhs = t_vals + t_vals[si]
        rhs = t_vals[cross]
        for pi_i in np.nonzero(lhs < rhs)[0]:
            triples.append(
                ViolationTriple(
                    Permutation(tuple(int(v) + 1 for v in perms[pi_i])),
                    Permutation(tuple(int(v) + 1 for v in perms[si])),
                    int(t_vals[pi_i]),
                    int(t_vals[si]),
                    int(rhs[pi_i]),
                )
            )
    return ViolationReport(n, tuple(triples))


# --- invariance ----------------------------------------------------------


def _dist_any(kind: str, p: Permutation, q: Permutation) -> int:
    if kind == "descent_graph":
        return descent_graph_distance(p, q)
    return distance(kind, p, q)


def invariance_check(
    kind: str, trials: int, rng: SeededRng, n: int = 8
) -> dict[str, bool]:
    """Randomized right/left invariance check at size n.

    A single counterexample settles a False; all trials passing reports
    True for that side (a randomized certificate, not a proof)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if kind == "descent_graph" and n > GRAPH_CAP:
        raise ValueError(f"descent_graph invariance needs n <= {GRAPH_CAP}")
    gen = rng.generator
    right = left = True
    for _ in range(trials):
        p, q, eta = (
            Permutation(tuple(int(v) + 1 for v in gen.permutation(n)))
            for _ in range(3)
        )
        base = _dist_any(kind, p, q)
        if right and _dist_any(kind, compose(p, eta), compose(q, eta)) != base:
            right = False
        if left and _dist_any(kind, compose(eta, p), compose(eta, q)) != base:
            left = False
        if not right and not left:
            break
    return {"right_invariant": right, "left_invariant": left}
