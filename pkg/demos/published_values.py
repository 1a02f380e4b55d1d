"""
Checking published parameters
=============================

Predict-only reports for every example, with any disagreement between the
published headers and the closed forms listed.
"""

from threeweight import analyze

for pmk in [(3, 3, 2), (3, 5, 4), (5, 3, 2), (3, 6, 2), (5, 3, 1), (3, 9, 3)]:
    rep = analyze(*pmk, predict_only=True)
    pr = rep["predicted"]
    print(pmk, "[%d,%d,%d]" % (pr["n"], pr["dim"], pr["min_weight"]))
    for note in rep["anomalies"]:
        print("   ", note)
