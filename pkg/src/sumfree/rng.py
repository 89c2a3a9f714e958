"""Seeded pseudo-randomness for the reproducible test suites.

The generator is SplitMix64: state advances by the 64-bit golden-ratio
increment and each output word is finalized with two xor-shift-multiply
rounds.  It is tiny, has no hidden state beyond one 64-bit word, and is
trivial to re-implement in any language, which is the whole point: every
"random" instance in this repository is a pure function of the seed.

Derived draws are defined exactly as follows (documented so that runs can
be reproduced outside Python):

* ``below(n)``      -- ``next_u64() % n``.
* ``subset(xs, m)`` -- partial Fisher-Yates: for i in 0..m-1 swap position
  ``i`` with position ``i + below(len(xs) - i)``; the sample is the sorted
  first ``m`` entries.
* ``bit_vector(n)`` -- n independent draws, element i included iff
  ``next_u64()`` is odd (one word per element, in index order).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator; one instance per reproducible suite."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in [0, n).  Plain modulo; bias is irrelevant here and the
        definition must stay portable."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def subset(self, items, m: int) -> list[int]:
        """Uniform m-element subset of ``items``, returned sorted."""
        pool = list(items)
        if not 0 <= m <= len(pool):
            raise ValueError("sample size out of range")
        for i in range(m):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:m])

    def bit_vector(self, n: int) -> int:
        """Bitmask of n fair coin flips (bit i set iff draw i is odd)."""
        bits = 0
        for i in range(n):
            if self.next_u64() & 1:
                bits |= 1 << i
        return bits
