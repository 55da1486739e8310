"""Seeded, reproducible random number generation.

The package fixes a single documented generator: Philox (4x64, as shipped
with NumPy), a counter-based generator whose output stream depends only on
the 64-bit key.  Identical seed + algorithm therefore means identical
streams across runs and platforms.

Parallel work never shares a stream.  Child streams are derived from
(seed, index) with the SplitMix64 finalizer:

    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB   mod 2**64
    child_seed = z ^ (z >> 31)

so a batch of work indexed b always sees the same randomness no matter
how many workers are running.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

ALGORITHMS = ("philox",)


def splitmix64(state: int) -> int:
    """One output of the SplitMix64 finalizer applied to ``state``."""
    z = state & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def child_seed(seed: int, index: int) -> int:
    """Derive the seed of child stream ``index`` (0-based) from ``seed``."""
    if index < 0:
        raise ValueError("child index must be nonnegative")
    return splitmix64((seed + (index + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class SeededRng:
    """A single-owner random stream identified by (seed, algorithm)."""

    seed: int
    algorithm: str = "philox"
    _gen: Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown rng algorithm {self.algorithm!r}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "_gen", Generator(Philox(key=self.seed)))

    @property
    def generator(self) -> Generator:
        """The underlying NumPy generator. Single owner; do not share."""
        return self._gen

    def child(self, index: int) -> "SeededRng":
        """Independent stream for work item ``index``."""
        return SeededRng(child_seed(self.seed, index), self.algorithm)

    def spawn(self, count: int) -> list["SeededRng"]:
        return [self.child(i) for i in range(count)]

    def uniform(self, shape) -> np.ndarray:
        return self._gen.random(shape)
