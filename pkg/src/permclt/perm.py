"""Permutations in one-line notation, and rank constructions from planar points.

A permutation of size n is stored as a tuple of the values
(p(1), ..., p(n)), each in {1, ..., n}.  All external I/O is 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .rng import SeededRng

ENUMERATION_CAP = 10


@dataclass(frozen=True)
class Permutation:
    entries: tuple[int, ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise ValueError("permutation size must be at least 1")
        if sorted(self.entries) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.entries}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, i: int) -> int:
        """Value at 1-based position i."""
        if not 1 <= i <= len(self.entries):
            raise IndexError(f"position {i} outside 1..{len(self.entries)}")
        return self.entries[i - 1]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return format_perm(self)


def make(entries: Sequence[int]) -> Permutation:
    return Permutation(tuple(int(v) for v in entries))


def parse_perm(text: str) -> Permutation:
    """Parse space-separated one-line notation, e.g. "2 4 1 3"."""
    parts = text.split()
    if not parts:
        raise ValueError("empty permutation string")
    try:
        return make(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad permutation string {text!r}: {exc}") from None


def format_perm(p: Permutation) -> str:
    return " ".join(str(v) for v in p.entries)


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("size must be a positive integer")
    return Permutation(tuple(range(1, n + 1)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.n
    for i, v in enumerate(p.entries):
        out[v - 1] = i + 1
    return Permutation(tuple(out))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation r with r(i) = p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.entries[v - 1] for v in q.entries))


def sample_uniform(n: int, rng: SeededRng) -> Permutation:
    if n < 1:
        raise ValueError("size must be a positive integer")
    return Permutation(tuple(int(v) + 1 for v in rng.generator.permutation(n)))


def enumerate_all(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order."""
    if n < 1:
        raise ValueError("size must be a positive integer")
    if n > cap:
        raise ValueError(f"enumeration size {n} exceeds cap {cap}")
    for tup in itertools.permutations(range(1, n + 1)):
        yield Permutation(tup)


@dataclass(frozen=True)
class PointConfiguration:
    """n planar points with coordinates in [0, 1].

    Coordinate ties are resolved by point index (first point wins the
    smaller rank), which keeps the rank maps total; exact duplicate
    points are rejected because no tie-break can separate them.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.points) < 1:
            raise ValueError("need at least one point")
        seen = set()
        for u, v in self.points:
            if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
                raise ValueError(f"point ({u}, {v}) outside the unit square")
            if (u, v) in seen:
                raise ValueError(f"duplicate point ({u}, {v})")
            seen.add((u, v))

    @property
    def n(self) -> int:
        return len(self.points)

    def u(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=np.float64)

    def v(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=np.float64)


def random_points(n: int, rng: SeededRng) -> PointConfiguration:
    coords = rng.uniform((n, 2))
    return PointConfiguration(tuple((float(a), float(b)) for a, b in coords))


def ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks with ties broken by position (stable)."""
    order = np.argsort(values, kind="stable")
    out = np.empty(len(values), dtype=np.int64)
    out[order] = np.arange(1, len(values) + 1)
    return out


def from_points(cfg: PointConfiguration) -> tuple[Permutation, Permutation]:
    """The permutation pair read off a point configuration.

    pi(i) is the y-rank of the point holding x-rank i, and sigma(i) is
    the x-rank of the point holding y-rank i; sigma is always the
    inverse of pi.
    """
    xr = ranks(cfg.u())
    yr = ranks(cfg.v())
    xorder = np.argsort(xr)
    pi = Permutation(tuple(int(r) for r in yr[xorder]))
    return pi, inverse(pi)
