"""Bit-vector integer sets and the elementary additive statistics.

One representation serves two addressing modes.  Range mode stores a
subset of {1..N} with universe N+1 (bit k = element k, bit 0 unused by
convention); sums and differences are taken in Z.  Modular mode stores a
subset of Z/tZ with universe t (bit r = residue r); sums and differences
wrap around mod t.  Sets are immutable, hashable and safe to share
between threads.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator, NamedTuple

import numpy as np

__all__ = [
    "IntSet",
    "DiffPopularity",
    "SetFileFormatError",
    "StructureStats",
    "count_additive_triples",
    "find_schur_triple",
    "is_sum_free",
    "popular_differences",
    "project_mod_t",
    "read_set_file",
    "structure_stats",
    "sumset",
    "upper_third_start",
    "write_set_file",
]


class SetFileFormatError(ValueError):
    """Raised when a set file violates the repo-wide text format."""


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _rotl(bits: int, k: int, t: int, mask: int) -> int:
    k %= t
    if k == 0:
        return bits
    return ((bits << k) | (bits >> (t - k))) & mask


@dataclasses.dataclass(frozen=True)
class IntSet:
    """A finite subset of {0..universe-1} as an immutable bit vector."""

    universe: int
    bits: int
    modular: bool = False

    def __post_init__(self):
        if self.universe <= 0:
            raise ValueError("universe must be positive")
        if self.bits < 0 or self.bits >> self.universe:
            raise ValueError("set bit outside universe")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_elements(cls, elements, universe: int, modular: bool = False) -> "IntSet":
        bits = 0
        for x in elements:
            if not 0 <= x < universe:
                raise ValueError(f"element {x} outside universe {universe}")
            bits |= 1 << x
        return cls(universe, bits, modular)

    @classmethod
    def empty(cls, universe: int, modular: bool = False) -> "IntSet":
        return cls(universe, 0, modular)

    @classmethod
    def full_range(cls, n: int) -> "IntSet":
        """{1..n} in range mode."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return cls(n + 1, ((1 << n) - 1) << 1, False)

    @classmethod
    def interval(cls, lo: int, hi: int, n: int) -> "IntSet":
        """{lo..hi} inside {1..n}."""
        if not 1 <= lo <= hi <= n:
            raise ValueError("need 1 <= lo <= hi <= n")
        return cls(n + 1, ((1 << (hi - lo + 1)) - 1) << lo, False)

    @classmethod
    def odds(cls, n: int) -> "IntSet":
        return cls.from_elements(range(1, n + 1, 2), n + 1, False)

    @classmethod
    def upper_third(cls, n: int) -> "IntSet":
        return cls.interval(upper_third_start(n), n, n)

    @classmethod
    def full_residues(cls, t: int) -> "IntSet":
        return cls(t, (1 << t) - 1, True)

    # -- basic queries ------------------------------------------------

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.universe and (self.bits >> x) & 1 == 1

    def elements(self) -> list[int]:
        return list(self)

    @property
    def n(self) -> int:
        """Largest representable element; equals N for range-mode sets."""
        return self.universe - 1

    # -- set algebra (universe and mode must match) --------------------

    def _check_compatible(self, other: "IntSet") -> None:
        if self.universe != other.universe or self.modular != other.modular:
            raise ValueError("incompatible universes")

    def __or__(self, other: "IntSet") -> "IntSet":
        self._check_compatible(other)
        return IntSet(self.universe, self.bits | other.bits, self.modular)

    def __and__(self, other: "IntSet") -> "IntSet":
        self._check_compatible(other)
        return IntSet(self.universe, self.bits & other.bits, self.modular)

    def __sub__(self, other: "IntSet") -> "IntSet":
        self._check_compatible(other)
        return IntSet(self.universe, self.bits & ~other.bits, self.modular)

    def issubset(self, other: "IntSet") -> bool:
        self._check_compatible(other)
        return self.bits & ~other.bits == 0

    # -- mode changes --------------------------------------------------

    def embed_mod(self, p: int) -> "IntSet":
        """Reinterpret a range-mode set as residues mod p (identity on elements)."""
        if self.modular:
            if self.universe != p:
                raise ValueError("modular set has wrong modulus")
            return self
        if self.universe > p:
            raise ValueError("universe exceeds modulus")
        return IntSet(p, self.bits, True)

    def intersect_range(self, n: int) -> "IntSet":
        """Elements in {1..n}, returned as a range-mode set."""
        mask = ((1 << n) - 1) << 1
        return IntSet(n + 1, self.bits & mask, False)

    def indicator(self, dtype=np.float64) -> np.ndarray:
        out = np.zeros(self.universe, dtype=dtype)
        idx = self.elements()
        if idx:
            out[idx] = 1
        return out


def upper_third_start(n: int) -> int:
    """First element of the upper-third interval, ceil((n+1)/3)."""
    return (n + 3) // 3


# -- additive statistics ----------------------------------------------


def is_sum_free(a: IntSet) -> bool:
    """True iff no x, y in the set (x = y allowed) have x + y in the set."""
    bits = a.bits
    if bits == 0:
        return True
    if a.modular:
        t = a.universe
        mask = (1 << t) - 1
        for x in _iter_bits(bits):
            if _rotl(bits, x, t, mask) & bits:
                return False
        return True
    for x in _iter_bits(bits):
        if (bits << x) & bits:
            return False
    return True


def count_additive_triples(a: IntSet) -> int:
    """Number of ordered pairs (x, y) in A x A with x + y in A.

    Equals sum_z (A*A)(z) A(z); the pair (x, y) with x != y and its
    reverse are counted separately, and x = y is counted once.
    """
    bits = a.bits
    total = 0
    if a.modular:
        t = a.universe
        mask = (1 << t) - 1
        for x in _iter_bits(bits):
            total += (_rotl(bits, t - x if x else 0, t, mask) & bits).bit_count()
        return total
    for x in _iter_bits(bits):
        total += ((bits >> x) & bits).bit_count()
    return total


def sumset(a: IntSet) -> IntSet:
    """A + A.  Modular sets wrap; range-mode results live in {2..2N}."""
    bits = a.bits
    if a.modular:
        t = a.universe
        mask = (1 << t) - 1
        out = 0
        for x in _iter_bits(bits):
            out |= _rotl(bits, x, t, mask)
        return IntSet(t, out, True)
    out = 0
    for x in _iter_bits(bits):
        out |= bits << x
    return IntSet(2 * a.universe - 1, out, False)


def find_schur_triple(a: IntSet) -> tuple[int, int, int] | None:
    """Smallest witness (x, y, z) with x <= y and x + y = z, or None."""
    elems = a.elements()
    for i, x in enumerate(elems):
        for y in elems[i:]:
            z = (x + y) % a.universe if a.modular else x + y
            if z in a:
                return (x, y, z)
    return None


class DiffPopularity:
    """Representation counts of differences a - a' over ordered pairs.

    ``counts[d]`` is the number of ordered pairs with a - a' = d.  Range
    mode stores d = 0..universe-1 and relies on the mirror symmetry
    counts[d] = counts[-d]; modular mode stores all residues.
    """

    def __init__(self, base: IntSet):
        self.base = base
        bits = base.bits
        u = base.universe
        counts = np.zeros(u, dtype=np.int64)
        if base.modular:
            mask = (1 << u) - 1
            for d in range(u):
                counts[d] = (_rotl(bits, d, u, mask) & bits).bit_count()
        else:
            for d in range(u):
                counts[d] = ((bits >> d) & bits).bit_count()
        self.counts = counts

    def total_mass(self) -> int:
        """Sum of counts over every difference (both signs in range mode)."""
        if self.base.modular:
            return int(self.counts.sum())
        return int(self.counts[0] + 2 * self.counts[1:].sum())

    def popular(self, threshold: float) -> IntSet:
        """Differences with at least ``threshold`` representations."""
        if threshold < 0:
            raise ValueError("threshold must be >= 0")
        idx = np.nonzero(self.counts >= threshold)[0]
        return IntSet.from_elements(idx.tolist(), self.base.universe, self.base.modular)

    def popular_count_two_sided(self, threshold: float) -> int:
        """|D(A, K)| counting +d and -d separately and 0 once (range mode)."""
        if self.base.modular:
            return len(self.popular(threshold))
        pop = self.counts >= threshold
        return int(2 * pop[1:].sum() + pop[0])


def popular_differences(a: IntSet, threshold: float) -> IntSet:
    """D(A, K): differences with >= K representations as a - a'.

    Range-mode results contain the non-negative differences only; the
    caller applies d <-> -d symmetry.
    """
    return DiffPopularity(a).popular(threshold)


def project_mod_t(a: IntSet, t: int) -> IntSet:
    """Image of a range-mode set under reduction mod t."""
    if a.modular:
        raise ValueError("expected a range-mode set")
    if t < 1:
        raise ValueError("modulus must be >= 1")
    bits = 0
    for x in _iter_bits(a.bits):
        bits |= 1 << (x % t)
    return IntSet(t, bits, True)


class StructureStats(NamedTuple):
    min_exceptions: int
    even_count: int
    eta: float


def structure_stats(a: IntSet, window: int) -> StructureStats:
    """Interval-concentration and parity statistics of a set in {1..N}.

    ``min_exceptions`` is the least number of elements left outside any
    window of ``window`` consecutive integers inside {1..N};
    ``even_count`` the number of even elements; ``eta`` = 1/2 - |A|/N.
    """
    if a.modular:
        raise ValueError("expected a range-mode set")
    n = a.universe - 1
    if not 1 <= window <= n:
        raise ValueError("window must lie in [1, N]")
    ind = np.zeros(n + 2, dtype=np.int64)
    for x in _iter_bits(a.bits):
        ind[x] = 1
    pref = np.cumsum(ind)
    # windows {s..s+window-1}, s = 1..n-window+1
    inside = pref[window:] - pref[:-window]
    best = int(inside.max()) if inside.size else 0
    size = len(a)
    even = sum(1 for x in _iter_bits(a.bits) if x % 2 == 0)
    return StructureStats(size - best, even, 0.5 - size / n)


# -- set files ---------------------------------------------------------


def write_set_file(a: IntSet, path) -> None:
    """Repo-wide set format: '# universe U' header, one element per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# universe {a.universe}\n")
        for x in a:
            fh.write(f"{x}\n")


def read_set_file(path, modular: bool = False) -> IntSet:
    """Parse a set file, rejecting any deviation from the format."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# universe "):
        raise SetFileFormatError("missing '# universe U' header")
    try:
        universe = int(lines[0][len("# universe "):])
    except ValueError as exc:
        raise SetFileFormatError("malformed universe header") from exc
    if universe <= 0:
        raise SetFileFormatError("universe must be positive")
    bits = 0
    prev = -1
    for ln in lines[1:]:
        if not ln.isdigit():
            raise SetFileFormatError(f"bad element line: {ln!r}")
        x = int(ln)
        if x <= prev:
            raise SetFileFormatError("elements must be strictly ascending")
        if x >= universe:
            raise SetFileFormatError(f"element {x} outside universe {universe}")
        if not modular and x == 0:
            raise SetFileFormatError("0 is not a valid element of a range-mode set")
        bits |= 1 << x
        prev = x
    return IntSet(universe, bits, modular)
