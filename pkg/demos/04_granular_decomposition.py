#!/usr/bin/env python3
"""Granular decomposition: progression partitions, good lengths, covering.

Z/pZ is partitioned into M progressions of difference d; the
granularization A' of a set A keeps the cells where A is eps1-dense.
A "good" d keeps the large Fourier coefficients of A aligned with the
cells.  Dense unstructured sets have no good length at accessible p, so
the search falls back to the best ratio (heuristic regime); structured
sets such as intervals do admit good lengths, and for those the additive
consequences are verified outright.
"""

import json

from sumfree import IntSet, choose_prime, cover_in_family, dft, granularization_report
from sumfree.granular import (
    GranParams,
    error_sum_squares,
    good_length_search,
    granularize,
    partition_progressions,
    verify_prop3,
)

ctx = choose_prime(100)
p = ctx.p
print(f"p = {p}")

print("\n-- the partition for d = 1, M = 14 ---------------------------")
part = partition_progressions(ctx, 1, 14)
print(f"cell sizes: {part.sizes.tolist()}  (L = {part.cell_len})")
print(f"cell 0: {part.cell_elements(0).tolist()}")

print("\n-- an interval has a good length ------------------------------")
a = IntSet.interval(76, 100, 100).embed_mod(p)
params = GranParams.make(p, 0.95, 0.80, 0.69, len(a) / p)
spec = dft(a, ctx)
rep, found = good_length_search(a, spec, params)
print(f"A = {{76..100}}: large spectrum k = {rep.spectrum.k}, "
      f"best d = {rep.d}, worst ratio = {rep.worst_ratio:.3f}, good = {found}")
err = error_sum_squares(a, ctx, rep.d, params.cell_len)
cap = spec.alpha * params.delta**2 * p**3
print(f"smoothing error sum = {err:.1f} <= alpha delta^2 p^3 = {cap:.1f}: "
      f"{err <= cap}")
gran = granularize(a, partition_progressions(ctx, rep.d, params.num_cells),
                   params=params)
prop3 = verify_prop3(a, gran, assert_good=True)
print(f"points with dense A'*A' escaping A+A: {prop3.bad_count} "
      f"(cap {prop3.bound:.1f})")

print("\n-- covering a sum-free set by a granular family member --------")
for name, a_range in (("odd numbers in [100]", IntSet.odds(100)),
                      ("{51..100}", IntSet.interval(51, 100, 100))):
    cover = cover_in_family(a_range, ctx, 0.25)
    rpt = granularization_report(a_range, ctx, cover)
    print(f"\n{name}:")
    print(json.dumps(rpt))
    print(f"contained in member: {a_range.issubset(cover.f_member)}, "
          f"added {len(cover.added)} <= eps*p = {0.25 * p:.0f}, "
          f"regime = {cover.regime}")
