"""Descent-based statistics and local statistics of degree k.

A local statistic of degree k sums component functions over the n-k+1
windows of k consecutive positions; each component sees only the
pattern (relative order) of the window and is bounded by 1 in absolute
value.  Descents are the degree-2 case, peaks the degree-3 case.
"""

from __future__ import annotations

import itertools
import json
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Mapping, Sequence

from .perm import Permutation, inverse

Pattern = tuple[int, ...]


def descents(p: Permutation) -> int:
    """D(p): positions i with p(i+1) < p(i)."""
    e = p.entries
    return sum(e[i + 1] < e[i] for i in range(len(e) - 1))


def descent_vector(p: Permutation) -> tuple[int, ...]:
    e = p.entries
    return tuple(1 if e[i + 1] < e[i] else 0 for i in range(len(e) - 1))


def t_statistic(p: Permutation) -> int:
    """T(p) = D(p) + D(p^-1); symmetric under inversion."""
    return descents(p) + descents(inverse(p))


def peaks(p: Permutation) -> int:
    """Interior windows of 3 whose middle value is the largest."""
    e = p.entries
    return sum(
        e[i] < e[i + 1] and e[i + 1] > e[i + 2] for i in range(len(e) - 2)
    )


def pattern_of(window: Sequence[int]) -> Pattern:
    """Rank each value within the window; result is a permutation of 1..k."""
    vals = list(window)
    if len(set(vals)) != len(vals):
        raise ValueError(f"window has duplicate values: {vals}")
    srt = sorted(vals)
    return tuple(srt.index(v) + 1 for v in vals)


def all_patterns(k: int) -> list[Pattern]:
    return [tuple(t) for t in itertools.permutations(range(1, k + 1))]


def _check_component(table: Mapping[Pattern, float], k: int) -> dict[Pattern, float]:
    want = set(all_patterns(k))
    got = set(table)
    if got != want:
        missing = sorted(want - got)
        extra = sorted(got - want)
        raise ValueError(
            f"component table must cover the {math.factorial(k)} patterns of "
            f"size {k}; missing={missing[:3]} extra={extra[:3]}"
        )
    out = {}
    for pat, val in table.items():
        v = float(val)
        if not -1.0 <= v <= 1.0:
            raise ValueError(f"component value {v} for {pat} outside [-1, 1]")
        out[pat] = v
    return out


@dataclass(frozen=True)
class LocalStatistic:
    """Degree-k statistic given by component tables over patterns.

    ``components`` holds one table per window when the statistic varies
    along the sequence, or a single shared table (the usual case).
    """

    degree: int
    components: tuple[dict[Pattern, float], ...]
    uniform: bool

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be at least 2")

    def component(self, i: int, n: int) -> dict[Pattern, float]:
        """Table for window i (0-based) on a size-n permutation."""
        if self.uniform:
            return self.components[0]
        if len(self.components) != n - self.degree + 1:
            raise ValueError(
                f"statistic has {len(self.components)} components but a "
                f"size-{n} permutation has {n - self.degree + 1} windows"
            )
        return self.components[i]

    def integer_valued(self) -> bool:
        return all(
            v == int(v) for tab in self.components for v in tab.values()
        )


def uniform_local(degree: int, table: Mapping[Pattern, float]) -> LocalStatistic:
    return LocalStatistic(degree, (_check_component(table, degree),), True)


def per_window_local(
    degree: int, tables: Sequence[Mapping[Pattern, float]]
) -> LocalStatistic:
    if not tables:
        raise ValueError("need at least one component table")
    checked = tuple(_check_component(t, degree) for t in tables)
    return LocalStatistic(degree, checked, False)


def descent_components() -> LocalStatistic:
    """Degree-2 statistic equal to the descent count."""
    return uniform_local(2, {(1, 2): 0.0, (2, 1): 1.0})


def peak_components() -> LocalStatistic:
    """Degree-3 statistic equal to the peak count."""
    table = {pat: 1.0 if pat[1] == 3 else 0.0 for pat in all_patterns(3)}
    return uniform_local(3, table)


def eval_local(stat: LocalStatistic, p: Permutation) -> float | int:
    """Sum the component values over all windows of p.

    Accumulates in exact integer arithmetic when every component value
    is an integer, floating point otherwise.
    """
    k = stat.degree
    n = p.n
    if k > n:
        raise ValueError(f"degree {k} exceeds permutation size {n}")
    if not stat.uniform and len(stat.components) != n - k + 1:
        raise ValueError(
            f"statistic has {len(stat.components)} components but a "
            f"size-{n} permutation has {n - k + 1} windows"
        )
    exact = stat.integer_valued()
    total: float | int = 0
    e = p.entries
    for i in range(n - k + 1):
        pat = pattern_of(e[i : i + k])
        val = stat.component(i, n)[pat]
        total += int(val) if exact else val
    return total


@dataclass(frozen=True)
class AuxStatistics:
    inversions: int
    cycle_count: int
    lis_length: int


def _inversions(e: Sequence[int]) -> int:
    # merge-count, O(n log n)
    def rec(a):
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, cl = rec(a[:mid])
        right, cr = rec(a[mid:])
        merged, inv, i, j = [], cl + cr, 0, 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                j += 1
                inv += len(left) - i
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return rec(list(e))[1]


def _cycle_count(e: Sequence[int]) -> int:
    n = len(e)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = e[i] - 1
    return cycles


def lis_length(e: Sequence[int]) -> int:
    """Longest increasing subsequence length via patience sorting."""
    tails: list[int] = []
    for v in e:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def aux_statistics(p: Permutation) -> AuxStatistics:
    e = p.entries
    return AuxStatistics(_inversions(e), _cycle_count(e), lis_length(e))


# --- serialization -------------------------------------------------------
#
# File format: JSON object with "degree" and either "uniform_component"
# (one pattern -> value table applied to every window) or "components"
# (a list of such tables, one per window).  Patterns are keyed by their
# one-line string, e.g. "2 1".


def _table_to_json(table: Mapping[Pattern, float]) -> dict[str, float]:
    return {" ".join(map(str, pat)): val for pat, val in table.items()}


def _table_from_json(obj: Mapping[str, float], k: int) -> dict[Pattern, float]:
    table = {}
    for key, val in obj.items():
        pat = tuple(int(x) for x in key.split())
        if len(pat) != k:
            raise ValueError(f"pattern {key!r} does not have degree {k}")
        table[pat] = float(val)
    return _check_component(table, k)


def local_to_json(stat: LocalStatistic) -> str:
    if stat.uniform:
        doc = {
            "degree": stat.degree,
            "uniform_component": _table_to_json(stat.components[0]),
        }
    else:
        doc = {
            "degree": stat.degree,
            "components": [_table_to_json(t) for t in stat.components],
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def local_from_json(text: str) -> LocalStatistic:
    doc = json.loads(text)
    k = int(doc["degree"])
    if "uniform_component" in doc:
        return uniform_local(k, _table_from_json(doc["uniform_component"], k))
    if "components" in doc:
        tables = [_table_from_json(t, k) for t in doc["components"]]
        return per_window_local(k, tables)
    raise ValueError("need either 'uniform_component' or 'components'")
