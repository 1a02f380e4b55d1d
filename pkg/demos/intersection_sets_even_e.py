"""
Intersection-set sizes when e is even
=====================================

For k/e odd the second moment of T is p^2m times the total size of four
solution sets.  With e even the sets are not all (p-1)^2 p^m: every element of
GF(p)* is a square in GF(q), so two of the sets only contain the origin.
"""

from threeweight import validate
from threeweight.quad_forms import (intersection_set_counts, predicted_set_counts,
                                    value_distribution)

for pmk in [(5, 3, 1), (3, 6, 2)]:
    spec = validate(*pmk)
    p, m = spec.p, spec.m
    brute = intersection_set_counts(spec, method="brute")
    print(pmk, "e =", spec.e)
    print("   counted    ", brute)
    print("   closed form", predicted_set_counts(spec))
    print("   (p-1)^2 p^m each would give", (p - 1) ** 2 * p ** m)

    # the total, which is all the moment identity needs, agrees either way
    vd = value_distribution(spec)
    print("   sum T^2 =", vd.second_moment, "=", p ** (2 * m), "*", sum(brute),
          vd.second_moment == p ** (2 * m) * sum(brute))
