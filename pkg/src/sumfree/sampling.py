"""Seeded random instances for the verification suites.

A uniform random subset of {1..N} is essentially never sum-free once N is
past a few dozen, so sum-free instances are drawn by rejection at a fixed
size: pick a size m, draw uniform m-subsets until one is sum-free.  Sizes
stay near sqrt(N), where rejection terminates quickly; if a size is
exhausted the sampler steps it down once and retries (deterministically).
"""

from __future__ import annotations

import math

from .rng import SplitMix64
from .sets import IntSet, is_sum_free

_MAX_TRIES_PER_SIZE = 20000


def random_subset_of(rng: SplitMix64, n: int) -> IntSet:
    """Uniform random subset of {1..N} (each element with probability 1/2)."""
    return IntSet(n + 1, rng.bit_vector(n) << 1, False)


def random_residue_set(rng: SplitMix64, p: int) -> IntSet:
    """Uniform random subset of Z/pZ."""
    return IntSet(p, rng.bit_vector(p), True)


def random_sum_free(rng: SplitMix64, n: int, max_size: int | None = None) -> IntSet:
    """Seeded sum-free subset of {1..N} via fixed-size rejection sampling."""
    if max_size is None:
        max_size = max(1, math.isqrt(n))
    m = rng.below(max_size + 1)
    while True:
        for _ in range(_MAX_TRIES_PER_SIZE):
            a = IntSet.from_elements(rng.subset(range(1, n + 1), m), n + 1)
            if is_sum_free(a):
                return a
        m -= 1  # unreachable for sizes near sqrt(N); kept for determinism
        if m <= 0:
            return IntSet.empty(n + 1)
