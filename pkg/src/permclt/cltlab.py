"""Monte Carlo CLT experiments and interaction-graph checks.

Experiments draw point configurations in the unit square and read
permutation statistics off their rank structure, so the sampled
probability space is literally the one the limit theorems describe.
All experiments are seed-deterministic and independent of the worker
count: work is split into fixed batches, batch b always draws from the
child stream b, and results merge in batch order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtr, ndtri

from . import kernels
from .exact import (
    descent_mean,
    descent_pair_correlation,
    descent_variance,
    t_mean,
    t_variance,
)
from .perm import PointConfiguration, Permutation, from_points, ranks
from .rng import SeededRng
from .stats import LocalStatistic, all_patterns, descent_components, peak_components

_BATCH_ELEMENTS = 4_000_000
_STACK_ELEMENTS = 2_000_000


# --- interaction graphs (scalar API) -------------------------------------


@dataclass(frozen=True)
class InteractionGraph:
    """Rank-difference graph: {i, j} is an edge iff the x-ranks or the
    y-ranks of the two points differ by at most the threshold.
    Indices are 1-based."""

    n: int
    threshold: int
    edges: frozenset[tuple[int, int]]


def build_graph(cfg: PointConfiguration, threshold: int) -> InteractionGraph:
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    xr = ranks(cfg.u())
    yr = ranks(cfg.v())
    n = cfg.n
    edges = frozenset(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(int(xr[i]) - int(xr[j])) <= threshold
        or abs(int(yr[i]) - int(yr[j])) <= threshold
    )
    return InteractionGraph(n, threshold, edges)


def degree_bound(g: InteractionGraph) -> int:
    """Maximum vertex degree of the graph."""
    deg = [0] * (g.n + 1)
    for i, j in g.edges:
        deg[i] += 1
        deg[j] += 1
    return max(deg)


def delta_j(
    f: Callable[[PointConfiguration], float],
    cfg: PointConfiguration,
    cfg_prime: PointConfiguration,
    j: int,
) -> float:
    """f(cfg) - f(cfg with point j replaced by cfg_prime's point j).

    j is 1-based.
    """
    if cfg.n != cfg_prime.n:
        raise ValueError("configurations must have equal sizes")
    if not 1 <= j <= cfg.n:
        raise IndexError(f"index {j} outside 1..{cfg.n}")
    pts = list(cfg.points)
    pts[j - 1] = cfg_prime.points[j - 1]
    return f(cfg) - f(PointConfiguration(tuple(pts)))


def pair_statistic_fn(stat) -> Callable[[PointConfiguration], float]:
    """The inversion-symmetric statistic F(pi) + F(sigma) as a function
    of a point configuration, for scalar experiments."""
    name, kind, k, table, _ = _resolve_pair_stat(stat)
    del name, k

    def f(cfg: PointConfiguration) -> float:
        pi, sigma = from_points(cfg)
        if kind == "T":
            from .stats import descents

            return float(descents(pi) + descents(sigma))
        from .stats import eval_local

        return float(eval_local(table, pi) + eval_local(table, sigma))

    return f


# --- reports -------------------------------------------------------------


@dataclass(frozen=True)
class McReport:
    statistic: str
    n: int
    samples: int
    seed: int
    mean: float
    sd: float
    ks: float
    w1: float
    standardization: str  # "exact" | "sample"

    def to_json_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "mean": self.mean,
            "sd": self.sd,
            "ks": self.ks,
            "w1": self.w1,
            "standardization": self.standardization,
        }


@dataclass(frozen=True)
class InteractionReport:
    statistic: str
    n: int
    trials: int
    seed: int
    threshold: int
    ext_threshold: int
    checked: int
    violations: int
    m_observed: float
    delta_observed: int
    delta_literal_observed: int
    delta_abs_mean: float
    delta_abs_third: tuple[float, ...]  # per-point E|Delta_j f|^3 estimates

    def to_json_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "n": self.n,
            "samples": self.trials,
            "seed": self.seed,
            "threshold": self.threshold,
            "ext_threshold": self.ext_threshold,
            "checked": self.checked,
            "violations": self.violations,
            "M": self.m_observed,
            "delta": self.delta_observed,
            "delta_literal": self.delta_literal_observed,
            "delta_note": (
                "delta counts rank-neighbors of vertex 1 along a single axis "
                "of the extension graph (at most 2*(threshold+4)); "
                "delta_literal is one plus the two-axis union degree, which "
                "can be nearly twice that"
            ),
        }


@dataclass(frozen=True)
class BivariateReport:
    n: int
    samples: int
    seed: int
    corr: float
    corr_target: float
    ks_d: float
    ks_d_inverse: float

    def to_json_dict(self) -> dict:
        return {
            "statistic": "(D, D_inverse)",
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "corr": self.corr,
            "corr_target": self.corr_target,
            "ks": [self.ks_d, self.ks_d_inverse],
        }


@dataclass(frozen=True)
class CoincidenceReport:
    n: int
    samples: int
    seed: int
    rate: float
    rate_sqrt_n: float

    def to_json_dict(self) -> dict:
        return {
            "statistic": "D == D_inverse",
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "rate": self.rate,
            "rate_sqrt_n": self.rate_sqrt_n,
        }


# --- empirical distances -------------------------------------------------


def ks_to_normal(standardized: np.ndarray) -> float:
    """Kolmogorov distance between the empirical law and N(0, 1)."""
    x = np.sort(np.asarray(standardized, dtype=np.float64))
    n = len(x)
    if n < 1:
        raise ValueError("need at least one sample")
    phi = ndtr(x)
    upper = (np.arange(1, n + 1) / n - phi).max()
    lower = (phi - np.arange(0, n) / n).max()
    return float(max(upper, lower))


def w1_to_normal(standardized: np.ndarray) -> float:
    """Quantile-coupling estimate of the Wasserstein-1 distance to N(0, 1):
    mean |x_(i) - Phi^{-1}((i - 1/2) / N)|."""
    x = np.sort(np.asarray(standardized, dtype=np.float64))
    n = len(x)
    if n < 1:
        raise ValueError("need at least one sample")
    q = ndtri((np.arange(n) + 0.5) / n)
    return float(np.abs(x - q).mean())


# --- batching ------------------------------------------------------------


def _batch_plan(total: int, batch_size: int) -> list[tuple[int, int]]:
    plan = []
    start = 0
    idx = 0
    while start < total:
        count = min(batch_size, total - start)
        plan.append((idx, count))
        start += count
        idx += 1
    return plan


def _run_batches(plan, worker, threads):
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, min(threads, len(plan)))
    if threads == 1:
        return [worker(idx, count) for idx, count in plan]
    results: dict[int, object] = {}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = {pool.submit(worker, idx, count): idx for idx, count in plan}
        for fut, idx in futs.items():
            results[idx] = fut.result()
    return [results[idx] for idx, _ in plan]


def _count_less(base: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Row-wise #{m : base[b, m] < query[b, j]} via one combined argsort."""
    b, n = base.shape
    comb = np.concatenate([base, query], axis=1)
    order = np.argsort(comb, axis=1)
    rank = np.empty_like(order)
    np.put_along_axis(rank, order, np.broadcast_to(np.arange(comb.shape[1]), comb.shape), 1)
    qorder = np.argsort(query, axis=1)
    qrank = np.empty_like(qorder)
    np.put_along_axis(qrank, qorder, np.broadcast_to(np.arange(n), query.shape), 1)
    return rank[:, n:] - qrank


# --- statistic resolution ------------------------------------------------


def _table_array(stat: LocalStatistic) -> np.ndarray:
    pats = all_patterns(stat.degree)
    ids = kernels.pattern_ids(np.array(pats, dtype=np.int64))
    table = np.empty(len(pats), dtype=np.float64)
    comp = stat.components[0]
    for pat, i in zip(pats, ids):
        table[int(i)] = comp[pat]
    return table


def _resolve_single_stat(stat):
    """Name, evaluator spec, and exact moments for mc_statistic."""
    if isinstance(stat, LocalStatistic):
        if not stat.uniform:
            k = stat.degree
            pats = all_patterns(k)
            ids = kernels.pattern_ids(np.array(pats, dtype=np.int64))
            tabs = np.empty((len(stat.components), len(pats)))
            for w, comp in enumerate(stat.components):
                for pat, i in zip(pats, ids):
                    tabs[w, int(i)] = comp[pat]
            return "local", ("local_per_window", k, None, tabs), None
        return "local", ("local", stat.degree, _table_array(stat), None), None
    if stat == "D":
        return "D", ("D", 2, None, None), (descent_mean, descent_variance)
    if stat == "T":
        return "T", ("T", 2, None, None), (t_mean, t_variance)
    if stat == "peaks":
        return "peaks", ("local", 3, _table_array(peak_components()), None), None
    raise ValueError(f"unknown statistic {stat!r}")


def _resolve_pair_stat(stat):
    """(name, kind, degree, LocalStatistic, table) for pair experiments.

    kind "T" runs the specialized descent path; anything else is a
    uniform-component local statistic applied to pi and its inverse.
    """
    if stat == "T":
        return "T", "T", 2, descent_components(), None
    if stat == "peaks":
        local = peak_components()
        return "peaks", "local", 3, local, _table_array(local)
    if isinstance(stat, LocalStatistic):
        if not stat.uniform:
            raise ValueError(
                "interaction experiments need a single shared component "
                "table; per-window tables are not translation invariant"
            )
        return "local", "local", stat.degree, stat, _table_array(stat)
    raise ValueError(f"unknown statistic {stat!r}")


def _eval_single_batch(spec, U, V):
    kind, k, table, per_window = spec
    xo = np.argsort(U, axis=1)
    sv = np.take_along_axis(V, xo, axis=1)
    if kind == "D":
        return kernels.batch_descents(sv)
    if kind == "T":
        yo = np.argsort(V, axis=1)
        su = np.take_along_axis(U, yo, axis=1)
        return kernels.batch_descents(sv) + kernels.batch_descents(su)
    if kind == "local":
        return kernels.batch_pattern_stat(sv, k, table)
    return kernels.batch_pattern_stat(sv, k, None, per_window)


def _eval_pair_batch(kind, k, table, U, V):
    xo = np.argsort(U, axis=1)
    sv = np.take_along_axis(V, xo, axis=1)
    yo = np.argsort(V, axis=1)
    su = np.take_along_axis(U, yo, axis=1)
    if kind == "T":
        return kernels.batch_descents(sv) + kernels.batch_descents(su)
    return kernels.batch_pattern_stat(sv, k, table) + kernels.batch_pattern_stat(
        su, k, table
    )


# --- Monte Carlo statistics ----------------------------------------------


def _default_batch(n: int) -> int:
    return int(np.clip(_BATCH_ELEMENTS // max(n, 1), 16, 65536))


def mc_statistic(
    stat,
    n: int,
    samples: int,
    rng: SeededRng,
    threads: int | None = None,
    label: str | None = None,
) -> McReport:
    """Sample the statistic over uniform point configurations and
    measure the distance of its standardized law from N(0, 1).

    Standardization uses the exact mean/variance formulas when the
    statistic has them (D and T), sample moments otherwise.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    if n < 2:
        raise ValueError("need size at least 2")
    name, spec, exact_moments = _resolve_single_stat(stat)
    if spec[0] == "local_per_window" and spec[3].shape[0] != n - spec[1] + 1:
        raise ValueError(
            f"statistic has {spec[3].shape[0]} window components but size "
            f"{n} needs {n - spec[1] + 1}"
        )
    plan = _batch_plan(samples, _default_batch(n))

    def worker(idx, count):
        child = rng.child(idx)
        U = child.uniform((count, n))
        V = child.uniform((count, n))
        return _eval_single_batch(spec, U, V)

    values = np.concatenate(_run_batches(plan, worker, threads)).astype(np.float64)
    mean = float(values.mean())
    sd = float(values.std(ddof=1))
    if exact_moments is not None:
        mu_f, var_f = exact_moments
        mu = float(mu_f(n))
        sigma = sqrt(float(var_f(n)))
        tag = "exact"
    else:
        mu, sigma, tag = mean, sd, "sample"
    if sigma <= 0:
        raise ValueError("statistic is degenerate at this size")
    z = (values - mu) / sigma
    return McReport(
        statistic=label or name,
        n=n,
        samples=samples,
        seed=rng.seed,
        mean=mean,
        sd=sd,
        ks=ks_to_normal(z),
        w1=w1_to_normal(z),
        standardization=tag,
    )


def bivariate_experiment(
    n: int,
    samples: int,
    rng: SeededRng,
    threads: int | None = None,
) -> BivariateReport:
    """Sample (D(pi), D(pi^-1)) pairs; report the empirical correlation
    and each marginal's Kolmogorov distance after exact standardization."""
    if samples < 2:
        raise ValueError("need at least two samples")
    if n < 2:
        raise ValueError("need size at least 2")
    plan = _batch_plan(samples, _default_batch(n))

    def worker(idx, count):
        child = rng.child(idx)
        U = child.uniform((count, n))
        V = child.uniform((count, n))
        xo = np.argsort(U, axis=1)
        sv = np.take_along_axis(V, xo, axis=1)
        yo = np.argsort(V, axis=1)
        su = np.take_along_axis(U, yo, axis=1)
        return kernels.batch_descents(sv), kernels.batch_descents(su)

    parts = _run_batches(plan, worker, threads)
    d1 = np.concatenate([a for a, _ in parts]).astype(np.float64)
    d2 = np.concatenate([b for _, b in parts]).astype(np.float64)
    corr = float(np.corrcoef(d1, d2)[0, 1])
    mu = float(descent_mean(n))
    sigma = sqrt(float(descent_variance(n)))
    return BivariateReport(
        n=n,
        samples=samples,
        seed=rng.seed,
        corr=corr,
        corr_target=float(descent_pair_correlation(n)),
        ks_d=ks_to_normal((d1 - mu) / sigma),
        ks_d_inverse=ks_to_normal((d2 - mu) / sigma),
    )


def coincidence_rate(
    n: int,
    samples: int,
    rng: SeededRng,
    threads: int | None = None,
) -> CoincidenceReport:
    """Empirical P(D(pi) = D(pi^-1)), reported with a sqrt(n) scaling
    alongside; observational output, no limit is asserted."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if n < 2:
        raise ValueError("need size at least 2")
    plan = _batch_plan(samples, _default_batch(n))

    def worker(idx, count):
        child = rng.child(idx)
        U = child.uniform((count, n))
        V = child.uniform((count, n))
        xo = np.argsort(U, axis=1)
        sv = np.take_along_axis(V, xo, axis=1)
        yo = np.argsort(V, axis=1)
        su = np.take_along_axis(U, yo, axis=1)
        return int(
            (kernels.batch_descents(sv) == kernels.batch_descents(su)).sum()
        )

    hits = sum(_run_batches(plan, worker, threads))
    rate = hits / samples
    return CoincidenceReport(n, samples, rng.seed, rate, rate * sqrt(n))


# --- interaction experiments ---------------------------------------------


def _positions_from_order(order: np.ndarray) -> np.ndarray:
    pos = np.empty_like(order)
    np.put_along_axis(
        pos, order, np.broadcast_to(np.arange(order.shape[1]), order.shape), 1
    )
    return pos


def _stack_deltas(sv, xpos, slots, new_vals, k, table):
    """f-side values after each single-point replacement, by evaluating
    the modified sequence for every point: remove position t, insert the
    new value at the reduced slot, score all windows."""
    b, n = sv.shape
    q = np.arange(n)[None, None, :]
    p = slots[:, :, None]
    t = xpos[:, :, None]
    m = q - (q > p)
    # the q == p lane is overwritten below; clip its index into range
    idx = np.minimum(m + (m >= t), n - 1)
    gathered = np.take_along_axis(sv[:, None, :], idx, axis=2)
    mod = np.where(q == p, new_vals[:, :, None], gathered)
    vals = kernels.batch_pattern_stat(mod.reshape(b * n, n), k, table)
    return vals.reshape(b, n)


def check_interaction_rule(
    stat,
    n: int,
    trials: int,
    rng: SeededRng,
    threshold: int | None = None,
    threads: int | None = None,
    label: str | None = None,
) -> InteractionReport:
    """Randomized check that the rank-difference graph is an interaction
    rule for the inversion-symmetric pair statistic.

    Per trial: draw a configuration (with 4 extra points for the
    extension graph), a replacement configuration, and a random ordered
    pair (i, j).  Whenever {i, j} is absent from the four graphs, the
    identity f(x) - f(x^j) = f(x^i) - f(x^ij) must hold; failures count
    as violations.  Also tracks M = max_j |Delta_j f| and the degree
    quantities of the extension graph (see the report's delta_note).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if n < 2:
        raise ValueError("need size at least 2")
    name, kind, k, local, table = _resolve_pair_stat(stat)
    if threshold is None:
        threshold = k - 1
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    ext_threshold = threshold + 4
    exact_compare = kind == "T" or local.integer_valued()
    batch = _default_batch(n + 4)
    if kind != "T":
        batch = min(batch, max(1, _STACK_ELEMENTS // (n * n)))
    plan = _batch_plan(trials, batch)
    m_ext = n + 4
    w = ext_threshold

    def worker(idx, count):
        child = rng.child(idx)
        gen = child.generator
        U = gen.random((count, m_ext))
        V = gen.random((count, m_ext))
        U2 = gen.random((count, n))
        V2 = gen.random((count, n))
        i_idx = gen.integers(0, n, count)
        j_raw = gen.integers(0, n - 1, count)
        j_idx = j_raw + (j_raw >= i_idx)

        rows = np.arange(count)
        Ub, Vb = U[:, :n], V[:, :n]
        xo = np.argsort(Ub, axis=1)
        sv = np.take_along_axis(Vb, xo, axis=1)
        yo = np.argsort(Vb, axis=1)
        su = np.take_along_axis(Ub, yo, axis=1)
        xpos = _positions_from_order(xo)
        ypos = _positions_from_order(yo)

        if kind == "T":
            f_x = kernels.batch_descents(sv) + kernels.batch_descents(su)
        else:
            f_x = kernels.batch_pattern_stat(sv, k, table) + kernels.batch_pattern_stat(
                su, k, table
            )

        px = _count_less(Ub, U2) - (Ub < U2)
        py = _count_less(Vb, V2) - (Vb < V2)
        if kind == "T":
            deltas = kernels.descent_pair_deltas(
                sv, su, xpos, ypos, V2, U2, px, py
            ).astype(np.float64)
        else:
            f_xj = _stack_deltas(sv, xpos, px, V2, k, table) + _stack_deltas(
                su, ypos, py, U2, k, table
            )
            deltas = f_x[:, None] - f_xj

        # ranks of i and j in the four configurations (0-based)
        def pick(arr, which):
            return arr[rows, which]

        u_i, u_j = pick(Ub, i_idx), pick(Ub, j_idx)
        v_i, v_j = pick(Vb, i_idx), pick(Vb, j_idx)
        u2_i, u2_j = pick(U2, i_idx), pick(U2, j_idx)
        v2_i, v2_j = pick(V2, i_idx), pick(V2, j_idx)

        def edge(xi, xj, yi, yj):
            return (np.abs(xi - xj) <= threshold) | (np.abs(yi - yj) <= threshold)

        xi0, xj0 = pick(xpos, i_idx), pick(xpos, j_idx)
        yi0, yj0 = pick(ypos, i_idx), pick(ypos, j_idx)
        pxi, pxj = pick(px, i_idx), pick(px, j_idx)
        pyi, pyj = pick(py, i_idx), pick(py, j_idx)

        any_edge = edge(xi0, xj0, yi0, yj0)
        # config x^i
        any_edge |= edge(
            pxi,
            xj0 - (u_i < u_j) + (u2_i < u_j),
            pyi,
            yj0 - (v_i < v_j) + (v2_i < v_j),
        )
        # config x^j
        any_edge |= edge(
            xi0 - (u_j < u_i) + (u2_j < u_i),
            pxj,
            yi0 - (v_j < v_i) + (v2_j < v_i),
            pyj,
        )
        # config x^ij
        any_edge |= edge(
            pxi - (u_j < u2_i) + (u2_j < u2_i),
            pxj - (u_i < u2_j) + (u2_i < u2_j),
            pyi - (v_j < v2_i) + (v2_j < v2_i),
            pyj - (v_i < v2_j) + (v2_i < v2_j),
        )
        eligible = ~any_edge

        # f(x^ij) by direct evaluation of the doubly replaced configuration
        U_ij = Ub.copy()
        V_ij = Vb.copy()
        U_ij[rows, i_idx] = u2_i
        U_ij[rows, j_idx] = u2_j
        V_ij[rows, i_idx] = v2_i
        V_ij[rows, j_idx] = v2_j
        f_ij = np.asarray(
            _eval_pair_batch(kind, k, table, U_ij, V_ij), dtype=np.float64
        )

        lhs = deltas[rows, j_idx]
        rhs = (np.asarray(f_x, dtype=np.float64) - deltas[rows, i_idx]) - f_ij
        if exact_compare:
            bad = eligible & (lhs != rhs)
        else:
            bad = eligible & (np.abs(lhs - rhs) > 1e-9)

        # degree quantities of the extension graph at vertex 1
        r0x = (U < U[:, :1]).sum(axis=1)
        r0y = (V < V[:, :1]).sum(axis=1)
        cx = np.minimum(r0x + w, m_ext - 1) - np.maximum(r0x - w, 0)
        cy = np.minimum(r0y + w, m_ext - 1) - np.maximum(r0y - w, 0)
        per_axis = np.maximum(cx, cy)

        xo14 = np.argsort(U, axis=1)
        yo14 = np.argsort(V, axis=1)
        ypos14 = _positions_from_order(yo14)
        offsets = r0x[:, None] + np.arange(-w, w + 1)[None, :]
        valid = (offsets >= 0) & (offsets <= m_ext - 1) & (offsets != r0x[:, None])
        ids = np.take_along_axis(xo14, np.clip(offsets, 0, m_ext - 1), axis=1)
        yp = np.take_along_axis(ypos14, ids, axis=1)
        overlap = ((np.abs(yp - r0y[:, None]) <= w) & valid).sum(axis=1)
        union_deg = cx + cy - overlap

        abs_d = np.abs(deltas)
        abs3_sum = (abs_d**3).sum(axis=0)
        return {
            "checked": int(eligible.sum()),
            "violations": int(bad.sum()),
            "m_max": float(abs_d.max()),
            "delta_max": int(per_axis.max()),
            "delta_literal_max": int(union_deg.max()) + 1,
            "abs_sum": float(abs_d.sum()),
            "abs3_sum": abs3_sum,
            "count": count,
        }

    parts = _run_batches(plan, worker, threads)
    abs3 = np.zeros(n, dtype=np.float64)
    abs_sum = 0.0
    checked = violations = 0
    m_max = 0.0
    delta_max = delta_literal_max = 0
    for part in parts:
        checked += part["checked"]
        violations += part["violations"]
        m_max = max(m_max, part["m_max"])
        delta_max = max(delta_max, part["delta_max"])
        delta_literal_max = max(delta_literal_max, part["delta_literal_max"])
        abs_sum += part["abs_sum"]
        abs3 += part["abs3_sum"]
    return InteractionReport(
        statistic=label or name,
        n=n,
        trials=trials,
        seed=rng.seed,
        threshold=threshold,
        ext_threshold=ext_threshold,
        checked=checked,
        violations=violations,
        m_observed=m_max,
        delta_observed=delta_max,
        delta_literal_observed=delta_literal_max,
        delta_abs_mean=abs_sum / (trials * n),
        delta_abs_third=tuple(float(x) / trials for x in abs3),
    )


# --- normal-approximation bound terms ------------------------------------


def theorem4_terms(
    M_bound: float,
    delta_bound: float,
    sigma: float,
    n: int,
    abs_delta_third_moments: Sequence[float],
) -> dict[str, float]:
    """The two terms of the normal-approximation bound

        sqrt(n)/sigma^2 * E(M^8)^(1/4) * E(delta^4)^(1/4)
        + 1/(2 sigma^3) * sum_j E|Delta_j f|^3

    with the moment factors replaced by the almost-sure bounds supplied
    by the caller.  The universal constant multiplying the first term is
    unknown, so the terms are returned separately and never summed into
    a claimed bound.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    term1 = sqrt(n) / sigma**2 * M_bound**2 * delta_bound
    term2 = float(sum(abs_delta_third_moments)) / (2 * sigma**3)
    return {"term1": term1, "term2": term2}


@dataclass(frozen=True)
class ScalingReport:
    statistic: str
    seed: int
    sizes: tuple[int, ...]
    term1: tuple[float, ...]
    term2: tuple[float, ...]
    slope_term1: float

    def to_json_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "seed": self.seed,
            "sizes": list(self.sizes),
            "term1": list(self.term1),
            "term2": list(self.term2),
            "slope_term1": self.slope_term1,
        }


def theorem4_scaling(
    rng: SeededRng,
    sizes: Sequence[int] = (100, 1000, 10000),
    trials: int = 500,
    threads: int | None = None,
) -> ScalingReport:
    """Evaluate the bound terms for the descent-pair statistic across
    sizes and fit the log-log slope of the first term.

    With the almost-sure bounds M <= 4 and delta <= 10 the first term is
    sqrt(n)/Var(T) * 160, so its slope reflects Var(T) = Theta(n); the
    third-moment sums for the second term come from sampled deltas.
    """
    term1 = []
    term2 = []
    for pos, size in enumerate(sizes):
        rep = check_interaction_rule(
            "T", size, trials, rng.child(pos), threads=threads
        )
        sigma = sqrt(float(t_variance(size)))
        terms = theorem4_terms(4.0, 10.0, sigma, size, rep.delta_abs_third)
        term1.append(terms["term1"])
        term2.append(terms["term2"])
    slope = float(
        np.polyfit(np.log(np.asarray(sizes, float)), np.log(term1), 1)[0]
    )
    return ScalingReport(
        statistic="T",
        seed=rng.seed,
        sizes=tuple(int(s) for s in sizes),
        term1=tuple(term1),
        term2=tuple(term2),
        slope_term1=slope,
    )
