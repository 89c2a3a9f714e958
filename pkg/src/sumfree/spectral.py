"""Fourier analysis over Z/pZ for a prime p in [2N, 4N].

The transform convention is A_hat(r) = sum_x A(x) e(rx/p) with
e(t) = exp(2*pi*i*t).  The slow root-table evaluation is the reference
path that defines correctness; the default path goes through numpy's FFT
(conjugated to match the sign convention) and is pinned to the reference
by the test suite.
"""

from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np

from .sets import IntSet

__all__ = [
    "LargeSpectrum",
    "PrimeContext",
    "Spectrum",
    "choose_prime",
    "convolve",
    "dft",
    "dft_vector",
    "dist_to_int",
    "indicator_convolution",
    "is_prime",
    "kernel_g",
    "kernel_values",
    "large_spectrum",
    "smoothed_indicator",
    "spectrum_csv_lines",
    "triple_count_spectral",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@functools.lru_cache(maxsize=None)
def _least_prime_in(lo: int, hi: int) -> int:
    for p in range(lo, hi + 1):
        if is_prime(p):
            return p
    raise ValueError(f"no prime in [{lo}, {hi}]")


@dataclasses.dataclass(frozen=True)
class PrimeContext:
    """(N, p) with p the least prime in [2N, 4N]."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 2 * self.n <= self.p <= 4 * self.n:
            raise ValueError("p must lie in [2N, 4N]")
        if self.p != _least_prime_in(2 * self.n, 4 * self.n):
            raise ValueError("p must be the least prime in [2N, 4N]")


def choose_prime(n: int) -> PrimeContext:
    """Least prime p with 2N <= p <= 4N (one exists for every N >= 1)."""
    return PrimeContext(n, _least_prime_in(2 * n, 4 * n))


@functools.lru_cache(maxsize=8)
def _root_table(p: int) -> np.ndarray:
    # e(k/p) for k = 0..p-1; built once per modulus, shared read-only.
    return np.exp(2j * np.pi * np.arange(p) / p)


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """Full transform of a subset of Z/pZ plus its density alpha = |A|/p."""

    context: PrimeContext
    values: np.ndarray
    alpha: float

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)


def _embed(a: IntSet, ctx: PrimeContext) -> IntSet:
    am = a if a.modular else a.embed_mod(ctx.p)
    if am.universe != ctx.p:
        raise ValueError("set universe does not match the prime modulus")
    return am


def _validate_spectrum(values: np.ndarray, size: int, p: int) -> None:
    assert abs(values[0] - size) <= 1e-9 * p, "A_hat(0) must equal |A|"
    sym_err = np.max(np.abs(values[1:][::-1] - np.conj(values[1:])), initial=0.0)
    assert sym_err <= 1e-9 * p, "conjugate symmetry violated"
    energy = float(np.sum(np.abs(values) ** 2))
    if size:
        assert abs(energy - p * size) <= 1e-9 * p * size, "Parseval violated"
    else:
        assert energy <= 1e-12


def dft(a: IntSet, ctx: PrimeContext, method: str = "fft") -> Spectrum:
    """Transform of a set (range-mode sets are embedded first)."""
    am = _embed(a, ctx)
    p = ctx.p
    values = dft_vector(am.indicator(), ctx, method)
    _validate_spectrum(values, len(am), p)
    return Spectrum(ctx, values, len(am) / p)


def dft_vector(f: np.ndarray, ctx: PrimeContext, method: str = "fft") -> np.ndarray:
    """Transform of a real vector indexed by Z/pZ."""
    p = ctx.p
    if len(f) != p:
        raise ValueError("vector length must equal p")
    if method == "fft":
        return np.conj(np.fft.fft(f))
    if method == "direct":
        w = _root_table(p)
        r = np.arange(p, dtype=np.int64)
        values = np.zeros(p, dtype=np.complex128)
        for x in np.nonzero(f)[0]:
            values += f[x] * w[(r * int(x)) % p]
        return values
    raise ValueError(f"unknown method {method!r}")


def convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Cyclic convolution (f*g)(x) = sum_y f(y) g(x-y) over Z/pZ."""
    if len(f) != len(g):
        raise ValueError("vectors must have equal length")
    return np.fft.ifft(np.fft.fft(f) * np.fft.fft(g)).real


def indicator_convolution(a: IntSet, b: IntSet) -> np.ndarray:
    """(A*B)(x) = number of representations x = a + b, as exact integers."""
    conv = convolve(a.indicator(), b.indicator())
    rounded = np.rint(conv)
    assert np.max(np.abs(conv - rounded)) <= 1e-6, "convolution drifted off integers"
    return rounded.astype(np.int64)


@dataclasses.dataclass(frozen=True)
class LargeSpectrum:
    """Nonzero frequencies with |A_hat(r)| >= delta * p."""

    delta: float
    members: np.ndarray
    k: int


def large_spectrum(spec: Spectrum, delta: float) -> LargeSpectrum:
    if delta <= 0:
        raise ValueError("delta must be positive")
    p = spec.context.p
    mags = spec.magnitudes()
    idx = np.nonzero(mags >= delta * p)[0]
    members = idx[idx != 0]
    k = int(members.size)
    if spec.alpha == 0:
        assert k == 0
    else:
        assert k < spec.alpha / delta**2, "large spectrum exceeds the Parseval bound"
    return LargeSpectrum(delta, members, k)


def dist_to_int(t: float) -> float:
    """Distance from t to the nearest integer, via frac in [0, 1)."""
    f = t % 1.0
    return min(f, 1.0 - f)


def kernel_g(ctx: PrimeContext, d: int, length: int, x: int) -> float:
    """Normalized Dirichlet kernel (1/(2L-1)) sum_{|j|<L} e(j d x / p).

    Real-valued, lies in [-1, 1], equals 1 at x = 0.
    """
    p = ctx.p
    if d % p == 0:
        raise ValueError("d must be nonzero mod p")
    if not 1 <= length <= p:
        raise ValueError("length must lie in [1, p]")
    t = (d * x) % p
    if t == 0 or length == 1:
        return 1.0
    theta = t / p
    val = math.sin((2 * length - 1) * math.pi * theta) / (
        (2 * length - 1) * math.sin(math.pi * theta)
    )
    return min(1.0, max(-1.0, val))


def kernel_values(ctx: PrimeContext, d: int, length: int) -> np.ndarray:
    """kernel_g at every x in Z/pZ."""
    p = ctx.p
    if d % p == 0:
        raise ValueError("d must be nonzero mod p")
    if not 1 <= length <= p:
        raise ValueError("length must lie in [1, p]")
    t = (d * np.arange(p, dtype=np.int64)) % p
    out = np.ones(p, dtype=np.float64)
    if length == 1:
        return out
    nz = t != 0
    theta = t[nz] / p
    out[nz] = np.sin((2 * length - 1) * np.pi * theta) / (
        (2 * length - 1) * np.sin(np.pi * theta)
    )
    return np.clip(out, -1.0, 1.0)


def smoothed_indicator(a: IntSet, ctx: PrimeContext, d: int, length: int) -> np.ndarray:
    """a1 = (1/(2L-1)) (A * P) with P = {jd : |j| < L} taken with multiplicity.

    Its transform is A_hat(x) * g(x) for the kernel with the same (d, L).
    """
    am = _embed(a, ctx)
    p = ctx.p
    pvec = np.zeros(p, dtype=np.float64)
    for j in range(-(length - 1), length):
        pvec[(j * d) % p] += 1.0
    return convolve(am.indicator(), pvec) / (2 * length - 1)


def triple_count_spectral(a: IntSet, ctx: PrimeContext) -> int:
    """sum_z (A*A)(z) A(z) through the convolution route; exact integer."""
    am = _embed(a, ctx)
    ind = am.indicator()
    s = float(np.dot(convolve(ind, ind), ind))
    r = round(s)
    assert abs(s - r) <= 1e-6 * max(1.0, abs(r))
    return r


def spectrum_csv_lines(spec: Spectrum) -> list[str]:
    """CSV dump with columns r, re, im, abs."""
    lines = ["r,re,im,abs"]
    for r, v in enumerate(spec.values):
        re, im = v.real or 0.0, v.imag or 0.0  # avoid "-0" in output
        lines.append(f"{r},{re:.12g},{im:.12g},{abs(v):.12g}")
    return lines
