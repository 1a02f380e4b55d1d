"""
Outside both regimes
====================

(3, 6, 4): e = 2 and k/e = 2 even.  No closed form applies, but the code can
still be enumerated entry by entry.  It is not three-weight.
"""

from threeweight import analyze, UnsupportedRegime

try:
    analyze(3, 6, 4)
except UnsupportedRegime as err:
    print("refused:", err)

# brute force admits it
rep = analyze(3, 6, 4, brute_force_only=True, skip_dual=True)
d = rep["distribution"]
print("[%d,%d,%d]" % (d["n"], d["dim"], d["min_weight"]))
print("weights:", {int(w): c for w, c in d["entries"].items()})
for note in rep["anomalies"]:
    print("note:", note)
