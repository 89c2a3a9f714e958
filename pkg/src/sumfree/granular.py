"""Granular decomposition of subsets of Z/pZ along progression partitions.

Z/pZ is cut into M arithmetic progressions of common difference d and
length L or L-1 (L = ceil(p/M)).  The granularization of a set A keeps
exactly the cells where A has density at least eps1.  A difference d is a
"good length" when every large Fourier coefficient r of A satisfies
||dr/p|| <= (1/4L) sqrt(delta p / |A_hat(r)|); good lengths make the
granularization inherit the additive behaviour of A, and the verifiers
here check those consequences instance by instance.

Density thresholds are compared in exact rational arithmetic, so cell
selection never depends on float ties.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import numpy as np

from .sets import IntSet, count_additive_triples, is_sum_free, sumset
from .spectral import (
    LargeSpectrum,
    PrimeContext,
    Spectrum,
    convolve,
    dft,
    indicator_convolution,
    large_spectrum,
    smoothed_indicator,
)

__all__ = [
    "CoverResult",
    "GoodLengthReport",
    "GranParams",
    "Granularization",
    "ProgressionPartition",
    "Prop3Report",
    "cover_in_family",
    "default_num_cells",
    "error_sum_squares",
    "good_length_check",
    "good_length_search",
    "granularization_report",
    "granularize",
    "partition_progressions",
    "smiley_predicate",
    "verify_prop3",
    "verify_prop4",
]


def default_num_cells(p: int) -> int:
    """Desk-scale default M = ceil(p/16), giving cells of length ~16."""
    return -(-p // 16)


@dataclasses.dataclass(frozen=True)
class GranParams:
    """Parameter bundle (eps1, eps2, eps3, alpha, M, L) for one analysis run."""

    eps1: float
    eps2: float
    eps3: float
    alpha: float
    num_cells: int
    cell_len: int

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps3"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")

    @property
    def delta(self) -> float:
        """Large-spectrum threshold (1/16) eps1^2 eps2 sqrt(eps3) / sqrt(alpha)."""
        if self.alpha == 0:
            return math.inf
        return (
            self.eps1**2 * self.eps2 * math.sqrt(self.eps3) / (16 * math.sqrt(self.alpha))
        )

    @classmethod
    def make(cls, p: int, eps1: float, eps2: float, eps3: float, alpha: float,
             num_cells: int | None = None) -> "GranParams":
        m = default_num_cells(p) if num_cells is None else num_cells
        if not 1 <= m <= p:
            raise ValueError("num_cells must lie in [1, p]")
        return cls(eps1, eps2, eps3, alpha, m, -(-p // m))

    @classmethod
    def linked(cls, p: int, eps: float, alpha: float,
               num_cells: int | None = None) -> "GranParams":
        """eps2 = eps^2/144 and eps3 = eps^2/80 slaved to eps1 = eps."""
        return cls.make(p, eps, eps**2 / 144, eps**2 / 80, alpha, num_cells)


class ProgressionPartition:
    """Partition of Z/pZ into M progressions of common difference d.

    Cell i holds {lambda*d : ceil(i*p/M) <= lambda < ceil((i+1)*p/M)}; the
    cells are disjoint, cover Z/pZ, and have length L or L-1.
    """

    def __init__(self, ctx: PrimeContext, d: int, num_cells: int):
        p = ctx.p
        if not 1 <= d <= p - 1:
            raise ValueError("d must be a nonzero residue")
        if not 1 <= num_cells <= p:
            raise ValueError("num_cells must lie in [1, p]")
        self.ctx = ctx
        self.d = d
        self.num_cells = num_cells
        self.cell_len = -(-p // num_cells)
        self._bounds = [-(-i * p // num_cells) for i in range(num_cells + 1)]
        self.sizes = np.diff(self._bounds).astype(np.int64)
        self._d_inv = pow(d, -1, p)
        assert self._bounds[0] == 0 and self._bounds[-1] == p
        assert all(s in (self.cell_len - 1, self.cell_len) for s in self.sizes.tolist())

    def cell_index(self, x: int) -> int:
        lam = (x * self._d_inv) % self.ctx.p
        return lam * self.num_cells // self.ctx.p

    def cell_indices(self, xs: np.ndarray) -> np.ndarray:
        lam = (xs.astype(np.int64) * self._d_inv) % self.ctx.p
        return lam * self.num_cells // self.ctx.p

    def cell_elements(self, i: int) -> np.ndarray:
        lam = np.arange(self._bounds[i], self._bounds[i + 1], dtype=np.int64)
        return (lam * self.d) % self.ctx.p

    def cell_set(self, i: int) -> IntSet:
        return IntSet.from_elements(self.cell_elements(i).tolist(), self.ctx.p, True)


def partition_progressions(ctx: PrimeContext, d: int, num_cells: int) -> ProgressionPartition:
    return ProgressionPartition(ctx, d, num_cells)


@dataclasses.dataclass(frozen=True)
class Granularization:
    """Dense-cell union A' of a set along one partition."""

    partition: ProgressionPartition
    params: GranParams
    dense_cells: tuple[int, ...]
    aprime: IntSet


def granularize(a: IntSet, part: ProgressionPartition,
                eps1: float | None = None,
                params: GranParams | None = None) -> Granularization:
    """Union of the cells where A has density >= eps1.

    Density comparisons use integer cross-multiplication against the exact
    binary value of eps1.  The defining bound |A \\ A'| <= eps1*p is
    asserted (every discarded cell holds < eps1*|cell| elements of A).
    """
    ctx = part.ctx
    p = ctx.p
    am = a if a.modular else a.embed_mod(p)
    if params is None:
        if eps1 is None:
            raise ValueError("need eps1 or params")
        params = GranParams.linked(p, eps1, len(am) / p, part.num_cells)
    elif params.num_cells != part.num_cells:
        raise ValueError("params and partition disagree on num_cells")
    eps = Fraction(params.eps1)

    elems = np.array(am.elements(), dtype=np.int64)
    counts = np.zeros(part.num_cells, dtype=np.int64)
    if elems.size:
        counts = np.bincount(part.cell_indices(elems), minlength=part.num_cells)
    dense = tuple(
        i for i in range(part.num_cells)
        if counts[i] * eps.denominator >= eps.numerator * int(part.sizes[i])
    )
    bits = 0
    for i in dense:
        for x in part.cell_elements(i).tolist():
            bits |= 1 << x
    aprime = IntSet(p, bits, True)

    dropped = len(am) - int(counts[list(dense)].sum()) if dense else len(am)
    assert dropped * eps.denominator <= eps.numerator * p, \
        "|A \\ A'| must stay below eps1*p"
    return Granularization(part, params, dense, aprime)


@dataclasses.dataclass(frozen=True)
class GoodLengthReport:
    """Outcome of the good-length inequality for one candidate d."""

    d: int
    is_good: bool
    worst_ratio: float
    spectrum: LargeSpectrum
    smiley: bool | None = None


def _bounds_for(spec: Spectrum, big: LargeSpectrum, params: GranParams) -> np.ndarray:
    p = spec.context.p
    mags = np.abs(spec.values[big.members])
    return np.sqrt(params.delta * p / mags) / (4 * params.cell_len)


def good_length_check(a: IntSet, spec: Spectrum, d: int, params: GranParams) -> GoodLengthReport:
    """Evaluate ||dr/p|| <= (1/4L) sqrt(delta p/|A_hat(r)|) over the large spectrum."""
    p = spec.context.p
    if d % p == 0:
        raise ValueError("d must be nonzero mod p")
    big = large_spectrum(spec, params.delta) if math.isfinite(params.delta) else \
        LargeSpectrum(params.delta, np.array([], dtype=np.int64), 0)
    if big.k == 0:
        return GoodLengthReport(d, True, 0.0, big)
    bounds = _bounds_for(spec, big, params)
    tm = (d * big.members.astype(np.int64)) % p
    lhs = np.minimum(tm, p - tm) / p
    worst = float(np.max(lhs / bounds))
    return GoodLengthReport(d, worst <= 1.0, worst, big)


def smiley_predicate(params: GranParams, p: int) -> bool:
    """Log-domain check of p > (4L)^(256 alpha^2 / (eps1^4 eps2^2 eps3))."""
    expo = 256 * params.alpha**2 / (params.eps1**4 * params.eps2**2 * params.eps3)
    return math.log(p) > expo * math.log(4 * params.cell_len)


def good_length_search(a: IntSet, spec: Spectrum,
                       params: GranParams) -> tuple[GoodLengthReport, bool]:
    """Exhaustive scan of d = 1..p-1 for the smallest worst-case ratio.

    Returns the report minimizing worst_ratio (ties to the smallest d) and
    whether any strictly good d exists.  The report carries the existence
    predicate flag, which never holds at desk scale.
    """
    p = spec.context.p
    big = large_spectrum(spec, params.delta) if math.isfinite(params.delta) else \
        LargeSpectrum(params.delta, np.array([], dtype=np.int64), 0)
    flag = smiley_predicate(params, p)
    if big.k == 0:
        return GoodLengthReport(1, True, 0.0, big, flag), True
    bounds = _bounds_for(spec, big, params)
    members = big.members.astype(np.int64)
    best_worst = math.inf
    best_d = 1
    chunk = max(1, (1 << 22) // max(1, big.k))
    for lo in range(1, p, chunk):
        ds = np.arange(lo, min(lo + chunk, p), dtype=np.int64)
        tm = (ds[:, None] * members[None, :]) % p
        lhs = np.minimum(tm, p - tm) / p
        worst = (lhs / bounds[None, :]).max(axis=1)
        i = int(np.argmin(worst))
        if worst[i] < best_worst:
            best_worst = float(worst[i])
            best_d = int(ds[i])
    report = GoodLengthReport(best_d, best_worst <= 1.0, best_worst, big, flag)
    return report, report.is_good


@dataclasses.dataclass(frozen=True)
class Prop3Report:
    """Points with large A'*A' count that escape A+A, against the eps3*p cap."""

    bad_count: int
    bound: float


def _ceil_fraction(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def verify_prop3(a: IntSet, gran: Granularization, assert_good: bool = False) -> Prop3Report:
    """Count x with (A'*A')(x) >= eps2*p but x not in A+A.

    When the granularization came from a good length the count is
    guaranteed to stay within eps3*p; pass assert_good=True to enforce it.
    """
    part = gran.partition
    p = part.ctx.p
    am = a if a.modular else a.embed_mod(p)
    conv = indicator_convolution(gran.aprime, gran.aprime)
    threshold = _ceil_fraction(Fraction(gran.params.eps2) * p)
    sums = sumset(am)
    bad = 0
    for x in np.nonzero(conv >= threshold)[0].tolist():
        if x not in sums:
            bad += 1
    bound = gran.params.eps3 * p
    if assert_good:
        eps3 = Fraction(gran.params.eps3)
        assert bad * eps3.denominator <= eps3.numerator * p, \
            f"bad_count {bad} exceeds eps3*p = {bound}"
    return Prop3Report(bad, bound)


def verify_prop4(a: IntSet, gran: Granularization, eps: float) -> bool:
    """Whether A' has at most eps*p^2 additive triples (mod p)."""
    p = gran.partition.ctx.p
    triples = count_additive_triples(gran.aprime)
    frac = Fraction(eps)
    return triples * frac.denominator <= frac.numerator * p * p


def error_sum_squares(a: IntSet, ctx: PrimeContext, d: int, length: int) -> float:
    """sum_n |(A*A)(n) - (a1*a1)(n)|^2 for the smoothed indicator a1."""
    am = a if a.modular else a.embed_mod(ctx.p)
    ind = am.indicator()
    a1 = smoothed_indicator(am, ctx, d, length)
    diff = convolve(ind, ind) - convolve(a1, a1)
    return float(np.sum(diff * diff))


@dataclasses.dataclass(frozen=True)
class CoverResult:
    """Witness that a sum-free set sits inside one granular family member."""

    f_member: IntSet
    added: IntSet
    gran: Granularization
    report: GoodLengthReport
    found_good: bool
    regime: str


def cover_in_family(a: IntSet, ctx: PrimeContext, eps: float,
                    num_cells: int | None = None) -> CoverResult:
    """Granularize along the best length and return (A' cap [N]) u (A \\ A').

    Uses the linked parameters eps2 = eps^2/144, eps3 = eps^2/80.  When no
    strictly good d exists (the usual case at accessible sizes) the best
    ratio d is used and the result is flagged as the heuristic regime.
    """
    if a.modular:
        raise ValueError("expected a range-mode subset of {1..N}")
    if not is_sum_free(a):
        raise ValueError("input set is not sum-free")
    n, p = ctx.n, ctx.p
    if a.universe - 1 > n:
        raise ValueError("set does not fit in {1..N}")
    am = a.embed_mod(p)
    params = GranParams.linked(p, eps, len(am) / p, num_cells)
    spec = dft(am, ctx)
    report, found = good_length_search(am, spec, params)
    part = partition_progressions(ctx, report.d, params.num_cells)
    gran = granularize(am, part, params=params)

    aprime_range = gran.aprime.intersect_range(n)
    a_range = IntSet(n + 1, a.bits, False)
    added = a_range - aprime_range
    f_member = aprime_range | added
    assert a_range.issubset(f_member), "cover must contain the original set"
    frac = Fraction(eps)
    assert len(added) * frac.denominator <= frac.numerator * p, \
        "leftover part exceeds eps*p"
    return CoverResult(f_member, added, gran, report, found,
                       "good" if found else "heuristic")


def granularization_report(a: IntSet, ctx: PrimeContext, cover: CoverResult) -> dict:
    """JSON-ready report for one granularization run (fixed key order)."""
    gran = cover.gran
    params = gran.params
    prop3 = verify_prop3(a.embed_mod(ctx.p), gran, assert_good=False)
    return {
        "p": ctx.p,
        "d": cover.report.d,
        "M": params.num_cells,
        "L": params.cell_len,
        "eps1": params.eps1,
        "eps2": params.eps2,
        "eps3": params.eps3,
        "delta": params.delta,
        "k": cover.report.spectrum.k,
        "is_good": cover.report.is_good,
        "worst_ratio": cover.report.worst_ratio,
        "aprime_size": len(gran.aprime),
        "added_size": len(cover.added),
        "triples_aprime": count_additive_triples(gran.aprime),
        "bad_count": prop3.bad_count,
        "bound": prop3.bound,
        "regime": cover.regime,
    }
