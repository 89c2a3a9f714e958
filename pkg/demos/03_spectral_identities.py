#!/usr/bin/env python3
"""Fourier analysis over Z/pZ: transform, convolution, kernel bounds.

Demonstrates the identities the verification suites rely on: Parseval's
identity, the convolution theorem, the exact triple count through the
convolution route, and the quadratic near-zero bound on the Dirichlet
smoothing kernel.
"""

import numpy as np

from sumfree import IntSet, SplitMix64, choose_prime, count_additive_triples, dft
from sumfree.sampling import random_residue_set
from sumfree.spectral import (
    convolve,
    dft_vector,
    dist_to_int,
    indicator_convolution,
    kernel_g,
    triple_count_spectral,
)

rng = SplitMix64(7)
ctx = choose_prime(100)
p = ctx.p
print(f"working modulus: p = {p} (least prime in [200, 400])")

print("\n-- Parseval: sum |A_hat(r)|^2 = p |A| ------------------------")
for _ in range(4):
    a = random_residue_set(rng, p)
    spec = dft(a, ctx)
    energy = float(np.sum(spec.magnitudes() ** 2))
    print(f"|A| = {len(a):>3}   energy = {energy:>12.3f}   p|A| = {p * len(a):>8}"
          f"   rel err = {abs(energy - p * len(a)) / (p * len(a)):.2e}")

print("\n-- convolution counts representations -----------------------")
a = IntSet.from_elements([3, 5, 10], p, True)
conv = indicator_convolution(a, a)
for x in np.nonzero(conv)[0].tolist():
    print(f"  (A*A)({x}) = {conv[x]}")
print(f"  total = {conv.sum()} = |A|^2 = {len(a) ** 2}")

print("\n-- convolution theorem ---------------------------------------")
f = random_residue_set(rng, p).indicator()
g = random_residue_set(rng, p).indicator()
lhs = dft_vector(convolve(f, g), ctx)
rhs = dft_vector(f, ctx) * dft_vector(g, ctx)
print(f"  max |(f*g)_hat - f_hat g_hat| = {np.max(np.abs(lhs - rhs)):.2e}")

print("\n-- triple count through the spectrum -------------------------")
ctx50 = choose_prime(50)
for _ in range(4):
    a = IntSet.from_elements(rng.subset(range(1, 51), 12), 51)
    direct = count_additive_triples(a)
    spectral = triple_count_spectral(a, ctx50)
    print(f"  |A| = 12: direct = {direct:>3}  spectral = {spectral:>3}  "
          f"{'agree' if direct == spectral else 'MISMATCH'}")

print("\n-- smoothing kernel: 1 - g(x) <= (2 pi^2 L^2 / 3) ||dx/p||^2 --")
worst_slack = 0.0
for _ in range(2000):
    d = 1 + rng.below(p - 1)
    x = rng.below(p)
    length = 1 + rng.below(32)
    g_val = kernel_g(ctx, d, length, x)
    bound = (2 * np.pi**2 * length**2 / 3) * dist_to_int(d * x / p) ** 2
    worst_slack = max(worst_slack, 1.0 - g_val - bound)
print(f"  2000 seeded tuples, max (1 - g - bound) = {worst_slack:.3e}  "
      f"({'bound holds' if worst_slack <= 1e-9 else 'VIOLATED'})")
