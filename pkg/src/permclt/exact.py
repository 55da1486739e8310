"""Exact distributions and moments of descent statistics.

Everything here is arbitrary-precision: counts are Python integers,
moments are Fractions.  Floating point enters only when measuring the
distance from a discrete law to the standard normal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt
from typing import Iterable

from scipy.special import ndtr

EULERIAN_CAP = 500
BRUTE_CAP = 10
GF_CAP = 60


@dataclass(frozen=True)
class ExactDistribution:
    """Counts of a statistic's values over all n! permutations."""

    n: int
    pairs: tuple[tuple[int, int], ...]  # (value, count), values increasing

    def __post_init__(self):
        vals = [v for v, _ in self.pairs]
        if vals != sorted(vals) or len(set(vals)) != len(vals):
            raise ValueError("values must be strictly increasing")
        if any(c < 0 for _, c in self.pairs):
            raise ValueError("counts must be nonnegative")

    def total(self) -> int:
        return sum(c for _, c in self.pairs)


@dataclass(frozen=True)
class ExactMoments:
    mean: Fraction
    variance: Fraction
    covariance: Fraction | None = None

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError("variance cannot be negative")


@dataclass(frozen=True)
class BivariateDescentTable:
    """cells[r][s] counts permutations with D(p) = r-1 and D(p^-1) = s-1.

    Indexed from 1 in both coordinates; row 0 and column 0 are unused.
    """

    n: int
    cells: tuple[tuple[int, ...], ...]
    method: str  # "brute" | "gf" | "recurrence"

    def cell(self, r: int, s: int) -> int:
        if not (1 <= r <= self.n and 1 <= s <= self.n):
            raise IndexError(f"cell ({r}, {s}) outside 1..{self.n}")
        return self.cells[r][s]

    def total(self) -> int:
        return sum(sum(row[1:]) for row in self.cells[1:])

    def row_sums(self) -> list[int]:
        """Marginal counts over r; equals the Eulerian row."""
        return [sum(self.cells[r][1:]) for r in range(1, self.n + 1)]

    def is_symmetric(self) -> bool:
        return all(
            self.cells[r][s] == self.cells[s][r]
            for r in range(1, self.n + 1)
            for s in range(1, r)
        )


# --- closed-form moments -------------------------------------------------


def descent_mean(n: int) -> Fraction:
    return Fraction(n - 1, 2)


def descent_variance(n: int) -> Fraction:
    return Fraction(n + 1, 12)


def t_mean(n: int) -> Fraction:
    return Fraction(n - 1)


def t_variance(n: int) -> Fraction:
    return Fraction(n + 7, 6) - Fraction(1, n)


def descent_pair_covariance(n: int) -> Fraction:
    """Cov(D(p), D(p^-1)) for uniform p."""
    return Fraction(n - 1, 2 * n)


def descent_pair_product_mean(n: int) -> Fraction:
    """E(D(p) * D(p^-1)) for uniform p."""
    return Fraction((n - 1) ** 2, 4) + Fraction(n - 1, 2 * n)


def descent_pair_correlation(n: int) -> Fraction:
    """Corr(D(p), D(p^-1)) = 6(n-1) / (n(n+1))."""
    return descent_pair_covariance(n) / descent_variance(n)


# --- Eulerian numbers ----------------------------------------------------


@lru_cache(maxsize=None)
def _eulerian_counts(n: int) -> tuple[int, ...]:
    # triangle recurrence: A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
    row = [1]
    for m in range(2, n + 1):
        prev = row
        row = [0] * m
        for k in range(m):
            acc = 0
            if k < m - 1:
                acc += (k + 1) * prev[k]
            if k > 0:
                acc += (m - k) * prev[k - 1]
            row[k] = acc
    return tuple(row)


def eulerian_row(n: int, cap: int = EULERIAN_CAP) -> ExactDistribution:
    """The law of the descent count D over S_n."""
    if n < 1:
        raise ValueError("size must be a positive integer")
    if n > cap:
        raise ValueError(f"size {n} exceeds cap {cap}")
    counts = _eulerian_counts(n)
    return ExactDistribution(n, tuple((j, counts[j]) for j in range(n)))


def verify_euler_identity(n: int, K: int) -> bool:
    """Check the power-series identity behind the Eulerian polynomial.

    True iff the first K+1 coefficients of A_n(t) * (1-t)^(-(n+1)) are
    0^n, 1^n, 2^n, ..., K^n, where A_n(t) = sum_i A_{n,i} t^i counts
    permutations with i-1 descents.  Exact integer arithmetic.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if K < n + 2:
        raise ValueError(f"need K >= n+2, got K={K}")
    counts = _eulerian_counts(n)  # counts[j] = #permutations with D = j
    for k in range(K + 1):
        coeff = sum(
            counts[i - 1] * comb(k - i + n, n)
            for i in range(1, min(n, k) + 1)
        )
        if coeff != k**n:
            return False
    return True


# --- bivariate tables by three routes ------------------------------------


def _wrap_cells(n: int, cells: list[list[int]], method: str) -> BivariateDescentTable:
    table = BivariateDescentTable(n, tuple(tuple(row) for row in cells), method)
    if table.total() != factorial(n):
        raise AssertionError(
            f"{method} table for n={n} sums to {table.total()}, "
            f"expected {factorial(n)}"
        )
    return table


@lru_cache(maxsize=None)
def _brute_cells(n: int) -> tuple[tuple[int, ...], ...]:
    cells = [[0] * (n + 1) for _ in range(n + 1)]
    for p in itertools.permutations(range(1, n + 1)):
        inv = [0] * n
        d = 0
        prev = p[0]
        inv[prev - 1] = 1
        for i in range(1, n):
            cur = p[i]
            if cur < prev:
                d += 1
            inv[cur - 1] = i + 1
            prev = cur
        di = sum(inv[i + 1] < inv[i] for i in range(n - 1))
        cells[d + 1][di + 1] += 1
    return tuple(tuple(row) for row in cells)


def bivariate_brute(n: int, cap: int = BRUTE_CAP) -> BivariateDescentTable:
    """Exact joint table by iterating all n! permutations."""
    if n < 1:
        raise ValueError("size must be a positive integer")
    if n > cap:
        raise ValueError(f"size {n} exceeds enumeration cap {cap}")
    return _wrap_cells(n, [list(r) for r in _brute_cells(n)], "brute")


def _convolve_truncated(coeffs: list[int], kernel: list[int], deg: int) -> list[int]:
    out = [0] * (deg + 1)
    for a in range(deg + 1):
        acc = 0
        for b in range(max(0, a - len(kernel) + 1), min(a, deg) + 1):
            acc += coeffs[b] * kernel[a - b]
        out[a] = acc
    return out


def bivariate_gf(n: int, cap: int = GF_CAP) -> BivariateDescentTable:
    """Joint table extracted from the closed-form generating function.

    The coefficient array of (1-u)^(n+1) (1-v)^(n+1) * sum_{k,l}
    C(kl+n-1, n) u^k v^l, with every polynomial truncated at degree n in
    each variable.  Truncation is exact because the product is a
    polynomial of degree at most n in u and in v.
    """
    if n < 1:
        raise ValueError("size must be a positive integer")
    if n > cap:
        raise ValueError(f"size {n} exceeds cap {cap}")
    kernel = [(-1) ** j * comb(n + 1, j) for j in range(n + 2)]
    # series coefficients, truncated at degree n in each variable
    grid = [[comb(k * l + n - 1, n) for l in range(n + 1)] for k in range(n + 1)]
    # multiply by (1-u)^(n+1) along the first index
    cols = [
        _convolve_truncated([grid[k][l] for k in range(n + 1)], kernel, n)
        for l in range(n + 1)
    ]
    # now cols[l][k]; multiply by (1-v)^(n+1) along l
    rows = [
        _convolve_truncated([cols[l][k] for l in range(n + 1)], kernel, n)
        for k in range(n + 1)
    ]
    # rows[k][l] is the coefficient of u^k v^l
    if rows[0][0] != 0 or any(rows[k][0] != 0 or rows[0][k] != 0 for k in range(n + 1)):
        raise AssertionError("generating function has mass at exponent 0")
    cells = [[0] * (n + 1) for _ in range(n + 1)]
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            if rows[r][s] < 0:
                raise AssertionError(f"negative coefficient at ({r}, {s})")
            cells[r][s] = rows[r][s]
    return _wrap_cells(n, cells, "gf")


class _Poly2:
    """Dense bivariate polynomial with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, c: list[list[int]]):
        self.c = c

    @classmethod
    def zero(cls, du: int, dv: int) -> "_Poly2":
        return cls([[0] * (dv + 1) for _ in range(du + 1)])

    def add_scaled(self, other: "_Poly2", factor: int, shift_u: int = 0, shift_v: int = 0):
        for i, row in enumerate(other.c):
            for j, val in enumerate(row):
                if val:
                    self.c[i + shift_u][j + shift_v] += factor * val

    def du(self) -> "_Poly2":
        out = _Poly2.zero(max(len(self.c) - 2, 0), len(self.c[0]) - 1)
        for i in range(1, len(self.c)):
            for j, val in enumerate(self.c[i]):
                if val:
                    out.c[i - 1][j] += i * val
        return out

    def dv(self) -> "_Poly2":
        out = _Poly2.zero(len(self.c) - 1, max(len(self.c[0]) - 2, 0))
        for i, row in enumerate(self.c):
            for j in range(1, len(row)):
                if row[j]:
                    out.c[i][j - 1] += j * row[j]
        return out


def _mul_uv_factors(p: _Poly2, with_1mu: bool, with_1mv: bool, du: int, dv: int) -> _Poly2:
    """p * u*v, optionally also by (1-u) and/or (1-v)."""
    out = _Poly2.zero(du, dv)
    u_terms = [(1, 1)] if not with_1mu else [(1, 1), (2, -1)]
    v_terms = [(1, 1)] if not with_1mv else [(1, 1), (2, -1)]
    for su, fu in u_terms:
        for sv, fv in v_terms:
            out.add_scaled(p, fu * fv, su, sv)
    return out


def bivariate_recurrence(n: int) -> BivariateDescentTable:
    """Joint table built iteratively from the differential recurrence

        m A_m = (m^2 uv + (m-1)(1-u)(1-v)) A_{m-1}
                + m uv (1-u) dA_{m-1}/du + m uv (1-v) dA_{m-1}/dv
                + uv (1-u)(1-v) d^2 A_{m-1}/du dv

    starting from A_1 = uv.  Every division by m must be exact; a
    remainder signals an implementation bug and raises.
    """
    if n < 1:
        raise ValueError("size must be a positive integer")
    poly = _Poly2([[0, 0], [0, 1]])  # uv
    for m in range(2, n + 1):
        prev = poly
        pu = prev.du()
        pv = prev.dv()
        puv = pu.dv()
        acc = _Poly2.zero(m, m)
        acc.add_scaled(prev, m * m, 1, 1)  # m^2 uv * prev
        # (m-1)(1-u)(1-v) * prev
        for su, fu in ((0, 1), (1, -1)):
            for sv, fv in ((0, 1), (1, -1)):
                acc.add_scaled(prev, (m - 1) * fu * fv, su, sv)
        acc.add_scaled(_mul_uv_factors(pu, True, False, m, m), m)
        acc.add_scaled(_mul_uv_factors(pv, False, True, m, m), m)
        acc.add_scaled(_mul_uv_factors(puv, True, True, m, m), 1)
        for i, row in enumerate(acc.c):
            for j, val in enumerate(row):
                q, r = divmod(val, m)
                if r:
                    raise ArithmeticError(
                        f"recurrence step {m} left remainder at u^{i} v^{j}"
                    )
                row[j] = q
        poly = acc
    cells = [[0] * (n + 1) for _ in range(n + 1)]
    for r in range(1, min(len(poly.c), n + 1)):
        for s in range(1, min(len(poly.c[r]), n + 1)):
            cells[r][s] = poly.c[r][s]
    return _wrap_cells(n, cells, "recurrence")


def t_distribution(table: BivariateDescentTable) -> ExactDistribution:
    """The law of T = D(p) + D(p^-1), read off the joint table."""
    n = table.n
    counts: dict[int, int] = {}
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            c = table.cell(r, s)
            if c:
                counts[r + s - 2] = counts.get(r + s - 2, 0) + c
    return ExactDistribution(n, tuple(sorted(counts.items())))


def moments(dist: ExactDistribution) -> ExactMoments:
    total = dist.total()
    if total == 0:
        raise ValueError("empty distribution")
    mean = Fraction(sum(v * c for v, c in dist.pairs), total)
    second = Fraction(sum(v * v * c for v, c in dist.pairs), total)
    return ExactMoments(mean, second - mean * mean)


def descent_covariance_exact(n: int, cap: int = BRUTE_CAP) -> Fraction:
    """Brute-force Cov(D(p), D(p^-1)) as an exact rational."""
    table = bivariate_brute(n, cap)
    total = factorial(n)
    prod = Fraction(
        sum(
            (r - 1) * (s - 1) * table.cell(r, s)
            for r in range(1, n + 1)
            for s in range(1, n + 1)
        ),
        total,
    )
    mean = Fraction(
        sum((r - 1) * c for r, c in zip(range(1, n + 1), table.row_sums())), total
    )
    return prod - mean * mean


def descent_product_mean_exact(n: int, cap: int = BRUTE_CAP) -> Fraction:
    """Brute-force E(D(p) * D(p^-1)) as an exact rational."""
    table = bivariate_brute(n, cap)
    return Fraction(
        sum(
            (r - 1) * (s - 1) * table.cell(r, s)
            for r in range(1, n + 1)
            for s in range(1, n + 1)
        ),
        factorial(n),
    )


# --- identities and distances --------------------------------------------


def irwin_hall_cell(n: int, j: int) -> Fraction:
    """P(j < U_1 + ... + U_n < j + 1) for independent uniform U_i.

    Computed by the alternating-sum volume formula; equals the descent
    probability P(D = j) = A_{n,j+1} / n! exactly.
    """
    if not 0 <= j <= n - 1:
        raise ValueError(f"need 0 <= j <= n-1, got j={j}, n={n}")

    def pos_pow(x: int) -> int:
        return x**n if x > 0 else 0

    acc = 0
    for m in range(n + 1):
        acc += (-1) ** m * comb(n, m) * (pos_pow(j + 1 - m) - pos_pow(j - m))
    return Fraction(acc, factorial(n))


def carlitz_zero_predicted(n: int, r: int, s: int) -> bool:
    """Support condition for the joint descent table.

    A cell (r, s) is empty exactly when s(r-1) > n(s-1) or
    r(s-1) > n(r-1).  The condition is symmetric in (r, s) and strict:
    the non-strict one-sided variant r >= (s-1)n/s + 1 misclassifies
    boundary cells (already at n=4, r=3, s=2, a nonempty cell).
    """
    return s * (r - 1) > n * (s - 1) or r * (s - 1) > n * (r - 1)


def carlitz_support_check(table: BivariateDescentTable) -> bool:
    """True iff emptiness of every cell matches the support condition
    in both directions."""
    n = table.n
    return all(
        (table.cell(r, s) == 0) == carlitz_zero_predicted(n, r, s)
        for r in range(1, n + 1)
        for s in range(1, n + 1)
    )


def kolmogorov_to_normal(
    dist: ExactDistribution, mean: Fraction | float, sd: float
) -> float:
    """sup_x | P((X - mean)/sd <= x) - Phi(x) | over the exact law.

    The supremum of the difference against a continuous CDF is attained
    at a jump of the discrete CDF, approaching from either side, so it
    suffices to scan the atoms.
    """
    if sd <= 0:
        raise ValueError("sd must be positive")
    total = dist.total()
    mu = float(mean)
    worst = 0.0
    cum = 0
    for v, c in dist.pairs:
        phi = float(ndtr((v - mu) / sd))
        lo = cum / total
        cum += c
        hi = cum / total
        worst = max(worst, abs(lo - phi), abs(hi - phi))
    return worst


def pitman_bound(n: int) -> float:
    """The Kolmogorov-distance bound sqrt(12/n) for the descent law."""
    return sqrt(12.0 / n)


# --- serialization -------------------------------------------------------


def table_rows(table: BivariateDescentTable) -> Iterable[tuple[int, int, int]]:
    for r in range(1, table.n + 1):
        for s in range(1, table.n + 1):
            yield r, s, table.cell(r, s)


def table_to_json_dict(table: BivariateDescentTable) -> dict:
    return {
        "n": table.n,
        "method": table.method,
        "cells": [
            {"r": r, "s": s, "count": str(c)} for r, s, c in table_rows(table)
        ],
    }


def dist_to_json_dict(dist: ExactDistribution, statistic: str) -> dict:
    return {
        "statistic": statistic,
        "n": dist.n,
        "values": [{"value": v, "count": str(c)} for v, c in dist.pairs],
    }
