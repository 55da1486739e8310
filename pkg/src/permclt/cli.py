"""Command-line front end.

Every subcommand writes one JSON document (default) or CSV to stdout;
diagnostics go to stderr.  Exit codes: 0 on success, 2 on usage errors,
1 on computation errors (sizes over a cap, bad statistic files, ...).

Seeding: the default seed is 271828 so bare commands are reproducible;
the PERMCLT_SEED environment variable overrides the default, and the
--seed flag overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import sqrt

from . import cltlab, exact, metrics
from .perm import format_perm, parse_perm
from .rng import SeededRng
from .stats import local_from_json

DEFAULT_SEED = 271828

_DIST_KINDS = tuple(k for k in metrics.METRIC_KINDS if k != "descent_graph")


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("PERMCLT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PERMCLT_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _resolve_stat(text: str):
    """Statistic flag value -> (object accepted by cltlab, display label)."""
    if text in ("D", "T", "peaks"):
        return text, text
    if text.startswith("local:"):
        path = text[len("local:"):]
        with open(path, encoding="utf-8") as fh:
            return local_from_json(fh.read()), text
    raise ValueError(
        f"unknown statistic {text!r}; expected D, T, peaks, or local:<file>"
    )


def _frac(x: Fraction) -> str:
    return str(x)


# --- subcommand handlers -------------------------------------------------


def _cmd_exact_eulerian(args):
    dist = exact.eulerian_row(args.n)
    out = {"kind": "distribution", **exact.dist_to_json_dict(dist, "D")}
    out["total"] = str(dist.total())
    return out


def _table_for(args):
    method = args.method
    if method == "brute":
        return exact.bivariate_brute(args.n)
    if method == "gf":
        return exact.bivariate_gf(args.n)
    return exact.bivariate_recurrence(args.n)


def _cmd_exact_bivariate(args):
    table = _table_for(args)
    out = {"kind": "bivariate_table", **exact.table_to_json_dict(table)}
    out["total"] = str(table.total())
    out["symmetric"] = table.is_symmetric()
    return out


def _cmd_exact_tdist(args):
    dist = exact.t_distribution(_table_for(args))
    out = {"kind": "distribution", **exact.dist_to_json_dict(dist, "T")}
    out["total"] = str(dist.total())
    return out


def _cmd_exact_moments(args):
    if args.stat == "D":
        mean, var = exact.descent_mean(args.n), exact.descent_variance(args.n)
    elif args.stat == "T":
        mean, var = exact.t_mean(args.n), exact.t_variance(args.n)
    else:
        raise ValueError(
            f"closed-form moments exist for D and T only, not {args.stat!r}"
        )
    return {
        "kind": "moments",
        "statistic": args.stat,
        "n": args.n,
        "mean": _frac(mean),
        "variance": _frac(var),
    }


def _cmd_exact_covariance(args):
    cov = exact.descent_covariance_exact(args.n)
    prod = exact.descent_product_mean_exact(args.n)
    matches = cov == exact.descent_pair_covariance(args.n) and (
        prod == exact.descent_pair_product_mean(args.n)
    )
    return {
        "kind": "covariance",
        "n": args.n,
        "covariance": _frac(cov),
        "product_mean": _frac(prod),
        "correlation": _frac(exact.descent_pair_correlation(args.n)),
        "matches_formulas": matches,
    }


def _cmd_exact_euler_identity(args):
    K = args.k if args.k is not None else args.n + 12
    ok = exact.verify_euler_identity(args.n, K)
    return {
        "kind": "check",
        "name": "euler_identity",
        "n": args.n,
        "verified": ok,
        "details": {"K": K},
    }


def _cmd_exact_stanley(args):
    dist = exact.eulerian_row(args.n)
    counts = {v: c for v, c in dist.pairs}
    fact = 1
    for i in range(2, args.n + 1):
        fact *= i
    cells = []
    ok = True
    for j in range(args.n):
        cell = exact.irwin_hall_cell(args.n, j)
        cnt = counts.get(j, 0)
        ok = ok and cell * fact == cnt
        cells.append({"j": j, "probability": _frac(cell), "count": str(cnt)})
    return {
        "kind": "stanley_cells",
        "n": args.n,
        "cells": cells,
        "verified": ok,
    }


def _cmd_exact_carlitz(args):
    table = _table_for(args)
    zeros = sum(1 for _, _, c in exact.table_rows(table) if c == 0)
    return {
        "kind": "check",
        "name": "carlitz_support",
        "n": args.n,
        "verified": exact.carlitz_support_check(table),
        "details": {"method": table.method, "zero_cells": zeros},
    }


def _cmd_exact_pitman(args):
    dist = exact.eulerian_row(args.n)
    ks = exact.kolmogorov_to_normal(
        dist,
        exact.descent_mean(args.n),
        sqrt(float(exact.descent_variance(args.n))),
    )
    bound = exact.pitman_bound(args.n)
    return {
        "kind": "check",
        "name": "pitman_bound",
        "n": args.n,
        "verified": ks < bound,
        "details": {"ks": ks, "bound": bound},
    }


def _cmd_metric_dist(args):
    p = parse_perm(args.pi)
    q = parse_perm(args.sigma)
    return {
        "kind": "distance",
        "metric": args.kind,
        "pi": format_perm(p),
        "sigma": format_perm(q),
        "value": metrics.distance(args.kind, p, q),
    }


def _cmd_metric_graph_dist(args):
    p = parse_perm(args.pi)
    q = parse_perm(args.sigma)
    return {
        "kind": "distance",
        "metric": "descent_graph",
        "pi": format_perm(p),
        "sigma": format_perm(q),
        "value": metrics.descent_graph_distance(p, q),
    }


def _cmd_metric_violations(args):
    report = metrics.search_triangle_violations(args.n)
    return {
        "kind": "violations",
        "n": report.n,
        "count": len(report.triples),
        "triples": [
            {
                "pi": format_perm(t.pi),
                "sigma": format_perm(t.sigma),
                "d_pi_id": t.d_pi_id,
                "d_id_sigma": t.d_id_sigma,
                "d_pi_sigma": t.d_pi_sigma,
            }
            for t in report.triples
        ],
    }


def _cmd_metric_invariance(args):
    seed = _resolve_seed(args)
    res = metrics.invariance_check(
        args.kind, args.trials, SeededRng(seed), n=args.n
    )
    return {
        "kind": "invariance",
        "metric": args.kind,
        "n": args.n,
        "trials": args.trials,
        "seed": seed,
        "right_invariant": res["right_invariant"],
        "left_invariant": res["left_invariant"],
    }


def _cmd_mc_clt(args):
    stat, label = _resolve_stat(args.stat)
    rep = cltlab.mc_statistic(
        stat, args.n, args.samples, SeededRng(_resolve_seed(args)),
        threads=args.threads, label=label,
    )
    return {"kind": "mc_report", **rep.to_json_dict()}


def _cmd_mc_bivariate(args):
    rep = cltlab.bivariate_experiment(
        args.n, args.samples, SeededRng(_resolve_seed(args)), threads=args.threads
    )
    return {"kind": "mc_bivariate", **rep.to_json_dict()}


def _cmd_mc_coincidence(args):
    rep = cltlab.coincidence_rate(
        args.n, args.samples, SeededRng(_resolve_seed(args)), threads=args.threads
    )
    return {"kind": "mc_coincidence", **rep.to_json_dict()}


def _cmd_verify_interaction(args):
    stat, label = _resolve_stat(args.stat)
    rep = cltlab.check_interaction_rule(
        stat, args.n, args.trials, SeededRng(_resolve_seed(args)),
        threshold=args.threshold, threads=args.threads, label=label,
    )
    return {"kind": "interaction_report", **rep.to_json_dict()}


def _cmd_verify_scaling(args):
    sizes = tuple(int(s) for s in args.sizes.split(","))
    rep = cltlab.theorem4_scaling(
        SeededRng(_resolve_seed(args)), sizes=sizes, trials=args.trials,
        threads=args.threads,
    )
    return {"kind": "scaling_report", **rep.to_json_dict()}


# --- rendering -----------------------------------------------------------


def _csv_text(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    kind = payload["kind"]
    if kind == "distribution":
        w.writerow(["value", "count"])
        for row in payload["values"]:
            w.writerow([row["value"], row["count"]])
    elif kind == "bivariate_table":
        w.writerow(["r", "s", "count"])
        for cell in payload["cells"]:
            w.writerow([cell["r"], cell["s"], cell["count"]])
    elif kind == "stanley_cells":
        w.writerow(["j", "probability", "count"])
        for cell in payload["cells"]:
            w.writerow([cell["j"], cell["probability"], cell["count"]])
    elif kind == "violations":
        w.writerow(["pi", "sigma", "d_pi_id", "d_id_sigma", "d_pi_sigma"])
        for t in payload["triples"]:
            w.writerow(
                [t["pi"], t["sigma"], t["d_pi_id"], t["d_id_sigma"], t["d_pi_sigma"]]
            )
    else:
        # generic single-row rendering: nested dicts flattened with a
        # dotted prefix, lists joined with ';'
        flat: dict[str, object] = {}
        for key, val in payload.items():
            if isinstance(val, dict):
                for sub, sv in val.items():
                    flat[f"{key}.{sub}"] = sv
            elif isinstance(val, list):
                flat[key] = ";".join(str(x) for x in val)
            else:
                flat[key] = val
        w.writerow(flat.keys())
        w.writerow(flat.values())
    return buf.getvalue()


def _emit(payload: dict, args) -> None:
    if args.format == "csv":
        text = _csv_text(payload)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- parser --------------------------------------------------------------


def _common(parser, *, seeded=False, threaded=False):
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", metavar="PATH", help="write output to a file")
    if seeded:
        parser.add_argument("--seed", type=int, default=None)
    if threaded:
        parser.add_argument("--threads", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permclt",
        description="Exact distributions, metrics, and CLT experiments "
        "for descent-type permutation statistics.",
    )
    top = ap.add_subparsers(dest="group", required=True)

    ex = top.add_parser("exact", help="exact distributions and identities")
    exs = ex.add_subparsers(dest="command", required=True)

    p = exs.add_parser("eulerian", help="descent counts over S_n")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_exact_eulerian)

    for name, handler, help_text in (
        ("bivariate", _cmd_exact_bivariate, "joint (D, D_inverse) table"),
        ("tdist", _cmd_exact_tdist, "distribution of T = D + D_inverse"),
        ("carlitz", _cmd_exact_carlitz, "zero-support check of the table"),
    ):
        p = exs.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument(
            "--method", choices=("brute", "gf", "recurrence"), default="recurrence"
        )
        _common(p)
        p.set_defaults(handler=handler)

    p = exs.add_parser("moments", help="closed-form mean and variance")
    p.add_argument("--stat", default="T")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_exact_moments)

    p = exs.add_parser("covariance", help="Cov(D, D_inverse) by enumeration")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_exact_covariance)

    p = exs.add_parser("euler-identity", help="negative-binomial coefficient identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="expansion cutoff (default n+12)")
    _common(p)
    p.set_defaults(handler=_cmd_exact_euler_identity)

    p = exs.add_parser("stanley", help="unit-cell probabilities of a uniform sum")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_exact_stanley)

    p = exs.add_parser("pitman", help="Kolmogorov distance of D vs its bound")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_exact_pitman)

    me = top.add_parser("metric", help="distances between permutations")
    mes = me.add_subparsers(dest="command", required=True)

    p = mes.add_parser("dist", help="distance in a chosen metric")
    p.add_argument("--kind", choices=_DIST_KINDS, required=True)
    p.add_argument("pi", help="permutation, e.g. \"3 4 1 2 5\"")
    p.add_argument("sigma")
    _common(p)
    p.set_defaults(handler=_cmd_metric_dist)

    p = mes.add_parser("graph-dist", help="shortest path in the T-weighted graph")
    p.add_argument("pi")
    p.add_argument("sigma")
    _common(p)
    p.set_defaults(handler=_cmd_metric_graph_dist)

    p = mes.add_parser("violations", help="triangle-inequality failures of the edge weight")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(handler=_cmd_metric_violations)

    p = mes.add_parser("invariance", help="randomized left/right invariance check")
    p.add_argument("--kind", choices=metrics.METRIC_KINDS, required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--trials", type=int, default=200)
    _common(p, seeded=True)
    p.set_defaults(handler=_cmd_metric_invariance)

    mc = top.add_parser("mc", help="Monte Carlo experiments")
    mcs = mc.add_subparsers(dest="command", required=True)

    p = mcs.add_parser("clt", help="distance of the standardized law from N(0,1)")
    p.add_argument("--stat", default="T", help="D, T, peaks, or local:<file>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    _common(p, seeded=True, threaded=True)
    p.set_defaults(handler=_cmd_mc_clt)

    p = mcs.add_parser("bivariate", help="joint law of (D, D_inverse)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    _common(p, seeded=True, threaded=True)
    p.set_defaults(handler=_cmd_mc_bivariate)

    p = mcs.add_parser("coincidence", help="empirical P(D = D_inverse)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    _common(p, seeded=True, threaded=True)
    p.set_defaults(handler=_cmd_mc_coincidence)

    ver = top.add_parser("verify", help="randomized structure checks")
    vers = ver.add_subparsers(dest="command", required=True)

    p = vers.add_parser("interaction", help="non-interaction identity of the rank graph")
    p.add_argument("--stat", default="T", help="T, peaks, or local:<file>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--threshold", type=int, default=None)
    _common(p, seeded=True, threaded=True)
    p.set_defaults(handler=_cmd_verify_interaction)

    p = vers.add_parser(
        "theorem4-scaling", help="log-log slope of the first bound term"
    )
    p.add_argument("--sizes", default="100,1000,10000")
    p.add_argument("--trials", type=int, default=500)
    _common(p, seeded=True, threaded=True)
    p.set_defaults(handler=_cmd_verify_scaling)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.handler(args)
        _emit(payload, args)
    except BrokenPipeError:
        return 1
    except (ValueError, ArithmeticError, OSError, KeyError, NotImplementedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
