#!/usr/bin/env python3
"""Classifying sum-free sets: all-odd, upper-third, or exceptional.

Two structured families dominate: sets of odd numbers (2^ceil(N/2) of
them, all sum-free) and subsets of the upper third {ceil((N+1)/3)..N}.
The census counts both classes exactly, plus their overlap, and calls
everything else exceptional.  At small N the exceptional sets can be
listed outright; the first one appears at N = 4.
"""

from sumfree import IntSet, census_classify, census_csv_lines, enumerate_sum_free
from sumfree.sets import upper_third_start

print("=" * 72)
print("The exceptional sum-free sets for small N (neither class)")
print("=" * 72)
for n in range(1, 11):
    start = upper_third_start(n)
    exceptional = []

    def visit(s, start=start, exceptional=exceptional):
        elems = s.elements()
        if not elems:
            return
        if all(x % 2 == 1 for x in elems):
            return
        if elems[0] >= start:
            return
        exceptional.append(elems)

    enumerate_sum_free(IntSet.full_range(n), visit)
    shown = ", ".join(str(e) for e in exceptional[:6])
    more = f" ... (+{len(exceptional) - 6})" if len(exceptional) > 6 else ""
    print(f"N={n:>2}: {len(exceptional):>3} exceptional  {shown}{more}")

print()
print("=" * 72)
print("Census (exact, inclusion-exclusion over the two classes)")
print("=" * 72)
records = [census_classify(n) for n in range(4, 29, 2)]
for line in census_csv_lines(records):
    print(line)
print()
print("note: exceptional/2^(N/2) is still RISING in this range; the")
print("asymptotic decay of the exceptional class needs far larger N.")
