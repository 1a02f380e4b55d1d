"""
Minimum distance of the dual code
=================================

For p = 3 with k even and e odd the dual has distance 4.  Weights 1, 2, 3 are
ruled out exhaustively and a weight-4 word is exhibited.
"""

from threeweight import dual_min_distance_certify, sphere_packing_max_d, validate
from threeweight.codes import in_dual
from threeweight.field_tower import tower_for

for pmk in [(3, 3, 2), (3, 5, 4)]:
    spec = validate(*pmk)
    t = tower_for(spec)
    cert = dual_min_distance_certify(spec, t)
    print(pmk, cert.as_dict()["params"])
    print("   refuted weights", cert.refuted)
    print("   witness (position, coefficient):", cert.witness, in_dual(spec, t, cert.witness))
    # no [n, n - 2m, 5] ternary code fits under the Hamming bound
    print("   sphere-packing max d:", sphere_packing_max_d(cert.n, cert.dim, 3),
          " optimal:", cert.optimal)
