"""Command-line front end: count, census, ratios, granularize, spectrum, verify.

Every run is a pure function of its flags (including --seed and
--workers); machine-readable outputs never contain timing or other
volatile data, so identical configurations produce byte-identical files.
Exit codes: 0 success, 2 budget exceeded, 3 invalid input set, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import census as census_mod
from . import granular as gran_mod
from . import spectral as spec_mod
from .rng import SplitMix64
from .sampling import random_subset_of, random_sum_free
from .sets import (
    DiffPopularity,
    IntSet,
    SetFileFormatError,
    find_schur_triple,
    is_sum_free,
    popular_differences,
    project_mod_t,
    read_set_file,
    write_set_file,
)

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_BAD_SET = 3
EXIT_USAGE = 64

VERIFY_SUITES = ("parseval", "kernel", "prop3", "prop4", "lemma11", "star")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(ValueError):
    """Flag combinations argparse cannot catch (e.g. missing --n)."""


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_range(spec: str) -> tuple[int, int]:
    lo, _, hi = spec.partition(":")
    return int(lo), int(hi)


def _universe_from(ns) -> IntSet:
    if ns.file:
        return read_set_file(ns.file)
    if ns.n is None:
        raise UsageError("--n is required without --file")
    if ns.universe == "odd":
        return IntSet.odds(ns.n)
    if ns.universe == "upper-third":
        return IntSet.upper_third(ns.n)
    return IntSet.full_range(ns.n)


def _resolve_workers(workers: str) -> int:
    if workers == "max":
        return os.cpu_count() or 1
    return max(1, int(workers))


def cmd_count(ns) -> int:
    universe = _universe_from(ns)
    workers = _resolve_workers(ns.workers)
    if ns.method == "naive":
        res = census_mod.count_sum_free_naive(universe)
    else:
        res = census_mod.count_sum_free_bb(universe, workers)
    if ns.format == "json":
        lines = [json.dumps({"n": res.n, "universe": res.universe, "count": res.count,
                             "method": res.method, "node_visits": res.node_visits})]
    elif ns.format == "csv":
        lines = ["N,universe,count,method,node_visits",
                 f"{res.n},{res.universe},{res.count},{res.method},{res.node_visits}"]
    else:
        lines = [f"count={res.count}",
                 f"universe={res.universe}",
                 f"method={res.method}",
                 f"node_visits={res.node_visits}"]
    _emit(lines, ns.output)
    print(f"elapsed={res.elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


def _census_records(ns):
    workers = _resolve_workers(ns.workers)
    if ns.n_range:
        lo, hi = _parse_range(ns.n_range)
        return [census_mod.census_classify(n, workers) for n in range(lo, hi + 1)]
    if ns.n is None:
        raise UsageError("need --n or --n-range")
    return [census_mod.census_classify(ns.n, workers)]


def cmd_census(ns) -> int:
    records = _census_records(ns)
    if ns.format == "json":
        lines = [json.dumps([r.__dict__ for r in records])]
    else:
        lines = census_mod.census_csv_lines(records)
    _emit(lines, ns.output)
    return EXIT_OK


def cmd_ratios(ns) -> int:
    workers = _resolve_workers(ns.workers)
    if not ns.n_range and ns.n is None:
        raise UsageError("need --n or --n-range")
    lo, hi = _parse_range(ns.n_range) if ns.n_range else (ns.n, ns.n)
    series = census_mod.ratio_series(lo, hi, workers)
    if ns.format == "json":
        lines = [json.dumps([{"n": n, "ratio": ratio, "parity": parity}
                             for n, ratio, parity in series])]
    else:
        lines = ["N,ratio,parity"] + [f"{n},{ratio:.6g},{parity}" for n, ratio, parity in series]
    _emit(lines, ns.output)
    return EXIT_OK


def cmd_granularize(ns) -> int:
    if not ns.file:
        raise UsageError("granularize needs --file")
    a = read_set_file(ns.file)
    if not is_sum_free(a):
        x, y, z = find_schur_triple(a)
        print(f"{x} + {y} = {z}", file=sys.stderr)
        return EXIT_BAD_SET
    n = ns.n if ns.n is not None else a.universe - 1
    if a.universe - 1 > n:
        print(f"set universe {a.universe} exceeds --n {n}", file=sys.stderr)
        return EXIT_BAD_SET
    ctx = spec_mod.choose_prime(n)
    cover = gran_mod.cover_in_family(a, ctx, ns.eps1, ns.m)
    report = gran_mod.granularization_report(a, ctx, cover)
    _emit([json.dumps(report)], ns.output)
    if ns.member_out:
        write_set_file(cover.f_member, ns.member_out)
    return EXIT_OK


def cmd_spectrum(ns) -> int:
    a = _universe_from(ns)
    n = a.universe - 1
    ctx = spec_mod.choose_prime(n)
    spec = spec_mod.dft(a, ctx)
    _emit(spec_mod.spectrum_csv_lines(spec), ns.output)
    return EXIT_OK


# -- verify suites ------------------------------------------------------


def _suite_parseval(ns, rng) -> list[tuple[str, bool]]:
    ctx = spec_mod.choose_prime(ns.n)
    p = ctx.p
    results = []
    for t in range(ns.trials):
        a = IntSet(p, rng.bit_vector(p), True)
        spec = spec_mod.dft(a, ctx)
        energy = float(np.sum(spec.magnitudes() ** 2))
        ok = abs(energy - p * len(a)) <= 1e-9 * max(1, p * len(a))
        results.append((f"trial {t}: |A|={len(a)} parseval_rel_ok={ok}", ok))
    return results

def _suite_kernel(ns, rng) -> list[tuple[str, bool]]:
    ctx = spec_mod.choose_prime(ns.n)
    p = ctx.p
    results = []
    for t in range(ns.trials):
        d = 1 + rng.below(p - 1)
        x = rng.below(p)
        length = 1 + rng.below(min(p, 64))
        g = spec_mod.kernel_g(ctx, d, length, x)
        bound = (2 * np.pi**2 * length**2 / 3) * spec_mod.dist_to_int(d * x / p) ** 2
        ok = -1.0 <= g <= 1.0 and 1.0 - g <= bound + 1e-9
        results.append((f"trial {t}: d={d} L={length} x={x} kernel_ok={ok}", ok))
    return results


def _suite_prop3(ns, rng) -> list[tuple[str, bool]]:
    ctx = spec_mod.choose_prime(ns.n)
    results = []
    for t in range(ns.trials):
        a = random_sum_free(rng, ns.n)
        cover = gran_mod.cover_in_family(a, ctx, ns.eps1)
        rep = gran_mod.verify_prop3(a.embed_mod(ctx.p), cover.gran,
                                    assert_good=cover.found_good)
        ok = (not cover.found_good) or rep.bad_count <= rep.bound
        results.append(
            (f"trial {t}: |A|={len(a)} good={cover.found_good} "
             f"bad_count={rep.bad_count} bound={rep.bound:.6g}", ok))
    return results


def _suite_prop4(ns, rng) -> list[tuple[str, bool]]:
    ctx = spec_mod.choose_prime(ns.n)
    results = []
    for t in range(ns.trials):
        a = random_sum_free(rng, ns.n)
        cover = gran_mod.cover_in_family(a, ctx, ns.eps1)
        within = gran_mod.verify_prop4(a.embed_mod(ctx.p), cover.gran, ns.eps1)
        ok = (not cover.found_good) or within
        results.append(
            (f"trial {t}: |A|={len(a)} good={cover.found_good} within_bound={within}", ok))
    return results


def _suite_lemma11(ns, rng) -> list[tuple[str, bool]]:
    n = ns.n
    results = []
    for t in range(ns.trials):
        a = random_subset_of(rng, n)
        tmod = n // 4 + 1 + rng.below(n - n // 4)
        proj = project_mod_t(a, tmod)
        da = DiffPopularity(a)
        dp = DiffPopularity(proj)
        ok = True
        for delta in (1.0 / n, 4.0 / n, 1.0 / 16):
            # d in D(A, 4*delta*n)  =>  pi(d) in D(pi(A), delta*n)
            for d in popular_differences(a, 4 * delta * n):
                if dp.counts[d % tmod] < delta * n:
                    ok = False
            # d in D(pi(A), 8*delta*n)  =>  some preimage in D(A, delta*n)
            for d in popular_differences(proj, 8 * delta * n):
                if not any(da.counts[abs(d + lam * tmod)] >= delta * n
                           for lam in range(-(n // tmod) - 1, n // tmod + 2)
                           if abs(d + lam * tmod) < a.universe):
                    ok = False
        results.append((f"trial {t}: |A|={len(a)} t={tmod} lemma11_ok={ok}", ok))
    return results


def _suite_star(ns, rng) -> list[tuple[str, bool]]:
    n = ns.n
    results = []
    for t in range(ns.trials):
        a = random_sum_free(rng, n)
        # eps = 1/N^2, so the popularity cutoff eps^(1/2) * N is exactly 1
        dp = DiffPopularity(a)
        lhs = 0.5 * dp.popular_count_two_sided(1.0) + len(a)
        rhs = n + 2.0
        ok = lhs <= rhs
        results.append((f"trial {t}: |A|={len(a)} lhs={lhs:.1f} rhs={rhs:.1f}", ok))
    return results


_SUITE_DEFAULT_N = {"parseval": 50, "kernel": 100, "prop3": 200, "prop4": 200,
                    "lemma11": 100, "star": 60}

_SUITES = {"parseval": _suite_parseval, "kernel": _suite_kernel,
           "prop3": _suite_prop3, "prop4": _suite_prop4,
           "lemma11": _suite_lemma11, "star": _suite_star}


def cmd_verify(ns) -> int:
    if ns.n is None:
        ns.n = _SUITE_DEFAULT_N[ns.suite]
    rng = SplitMix64(ns.seed)
    results = _SUITES[ns.suite](ns, rng)
    lines = [line for line, _ in results]
    passes = sum(1 for _, ok in results if ok)
    lines.append(f"{passes}/{len(results)} pass")
    _emit(lines, ns.output)
    return EXIT_OK if passes == len(results) else 1


# -- argument wiring -----------------------------------------------------


def _add_common(p, *, n=True, n_range=False, universe=False, file=False,
                workers=True, fmt=True):
    if n:
        p.add_argument("--n", type=int, default=None, help="upper end of {1..N}")
    if n_range:
        p.add_argument("--n-range", default=None, metavar="A:B",
                       help="inclusive range of N values")
    if universe:
        p.add_argument("--universe", choices=("full", "odd", "upper-third"),
                       default="full")
    if file:
        p.add_argument("--file", default=None, help="set file path")
    if workers:
        p.add_argument("--workers", default="1",
                       help="worker count for counting (integer or 'max')")
    if fmt:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None, help="write output to this file")


def build_parser() -> _Parser:
    parser = _Parser(prog="sumfree",
                     description="Exact sum-free set computations over {1..N} and Z/pZ")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[], help="count sum-free subsets")
    _add_common(p, universe=True, file=True)
    p.add_argument("--method", choices=("naive", "bb"), default="bb")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("census", help="classification census per N")
    _add_common(p, n_range=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("ratios", help="|SF(N)|/2^(N/2) series")
    _add_common(p, n_range=True)
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("granularize", help="granularize a sum-free set file")
    _add_common(p, file=True, workers=False, fmt=False)
    p.add_argument("--eps1", type=float, default=0.25)
    p.add_argument("--m", type=int, default=None, help="number of cells M")
    p.add_argument("--member-out", default=None, help="write the covering set here")
    p.set_defaults(func=cmd_granularize)

    p = sub.add_parser("spectrum", help="dump the transform of a set as CSV")
    _add_common(p, universe=True, file=True, workers=False, fmt=False)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run a seeded invariant suite")
    p.add_argument("suite", choices=VERIFY_SUITES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps1", type=float, default=0.25)
    _add_common(p, workers=False, fmt=False)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except census_mod.BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SetFileFormatError as exc:
        print(f"invalid set file: {exc}", file=sys.stderr)
        return EXIT_BAD_SET


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
