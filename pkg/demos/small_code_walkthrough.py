"""
The [26,6,15] ternary code step by step
=======================================

Build GF(27), form a few codewords, count weights three ways.
"""

import numpy as np

from threeweight import (code_polynomials, codeword, enumerate_distribution, form,
                         gauss_sum, predicted_distribution, radical_rank, s_sum, validate)
from threeweight.field_tower import tower_for

# p = 3, m = 3, k = 2: k even, e = gcd(m, k) = 1 odd, so the sums are of S type
spec = validate(3, 3, 2)
t = tower_for(spec)
print(spec)
print("modulus (low degree first):", t.modulus.to_string(), " pi =", t.pi)

# generator, parity-check and dual generator polynomials
polys = code_polynomials(spec, t)
print("g(x)  =", polys.g.pretty())
print("h*(x) =", polys.dual.pretty())

# a codeword is Tr(a (-pi)^t + b pi^(u t)) for t = 0..n-1
c = codeword(spec, t, 1, 2)
print("c_(1,2) =", "".join(map(str, c)), " weight", np.count_nonzero(c))

# the weight comes from the exponential sum S(a, b): wt = p^m - p^(m-1) - S / 2p
S = s_sum(spec, 1, 2, method="both")
print("S(1,2) =", S, " ->", 27 - 9 - S // 6)

# S is assembled from Gauss sums of Q_{a,b}(x) = Tr_{q^s/q}(a x^2 + b x^(p^k+1))
f = form(spec, 1, 2)
print("rank of Q_(1,2):", radical_rank(f), " Gauss sum:", gauss_sum(f))

# whole weight distribution: enumerated vs closed form
wd = enumerate_distribution(spec, t)
print("enumerated:", wd.entries, wd.checks)
print("closed form:", predicted_distribution(spec).entries)
