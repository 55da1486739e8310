"""Timing comparison of the pure NumPy kernels and the compiled twin.

Run:  python3 benchmarks/bench_kernels.py [--rows 4000] [--n 100]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from permclt.kernels import _ref

try:
    from permclt.kernels import _core
except ImportError:
    _core = None


def _time(fn, repeats: int) -> float:
    fn()  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=4000)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--repeats", type=int, default=10)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    rows = rng.random((args.rows, args.n))
    table3 = rng.integers(-1, 2, 6).astype(np.float64)

    U = rng.random((args.rows, args.n))
    V = rng.random((args.rows, args.n))
    U2 = rng.random((args.rows, args.n))
    V2 = rng.random((args.rows, args.n))
    xo = np.argsort(U, 1)
    sv = np.take_along_axis(V, xo, 1)
    yo = np.argsort(V, 1)
    su = np.take_along_axis(U, yo, 1)
    xpos = np.empty_like(xo)
    np.put_along_axis(xpos, xo, np.broadcast_to(np.arange(args.n), xo.shape), 1)
    ypos = np.empty_like(yo)
    np.put_along_axis(ypos, yo, np.broadcast_to(np.arange(args.n), yo.shape), 1)
    px = np.minimum((U[:, :1] * 0 + np.arange(args.n)), args.n - 1).astype(np.int64)
    py = px.copy()

    cases = {
        "batch_descents": lambda mod: mod.batch_descents(rows),
        "pattern_stat_k3": lambda mod: mod.batch_pattern_stat(rows, 3, table3),
        "descent_pair_deltas": lambda mod: mod.descent_pair_deltas(
            sv, su, xpos, ypos, V2, U2, px, py
        ),
    }

    lanes = [("pure", _ref)] + ([("compiled", _core)] if _core else [])
    print(f"rows={args.rows} n={args.n} repeats={args.repeats}")
    for name, call in cases.items():
        baseline = None
        for lane, mod in lanes:
            dt = _time(lambda: call(mod), args.repeats)
            speedup = "" if baseline is None else f"  ({baseline / dt:.1f}x)"
            if baseline is None:
                baseline = dt
            print(f"  {name:22s} {lane:9s} {dt * 1e3:8.2f} ms{speedup}")
    if _core is None:
        print("compiled lane not built; only the pure lane was timed")


if __name__ == "__main__":
    main()
