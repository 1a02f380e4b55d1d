"""One full analysis run for a parameter triple, assembled into a JSON-ready report."""

from __future__ import annotations

import time
from contextlib import contextmanager

from .codes import (DEFAULT_BUDGET, DUAL_BUDGET_N, dual_min_distance_certify,
                    enumerate_distribution, predicted_distribution)
from .errors import BudgetExceeded
from .field_tower import tower_for
from .params import Regime, validate
from .poly_ring import code_polynomials
from .published import anomalies
from .quad_forms import (intersection_set_counts, predicted_set_counts,
                         predicted_value_distribution, value_distribution)

REPORT_KEYS = ("params", "polynomials", "distribution", "predicted", "match",
               "sums", "sets", "dual", "anomalies")


class _Clock:
    def __init__(self):
        self.stages = {}

    @contextmanager
    def __call__(self, name):
        t0 = time.perf_counter()
        yield
        self.stages[name] = round(time.perf_counter() - t0, 4)


def _sums_section(spec, t, sets_total):
    vd = value_distribution(spec, t)
    pred = predicted_value_distribution(spec)
    p, m = spec.p, spec.m
    first_expected = 2 * (p - 1) * p ** (2 * m)
    out = vd.as_dict()
    out["predicted"] = [{"value": v, "count": c} for v, c in sorted(pred.items())]
    out["match"] = vd.counts == pred
    out["moments"] = {
        "first_expected": first_expected,
        "first_holds": vd.first_moment == first_expected,
        "second_expected": None if sets_total is None else p ** (2 * m) * sets_total,
        "second_holds": None if sets_total is None else vd.second_moment == p ** (2 * m) * sets_total,
    }
    return out


def analyze(p: int, m: int, k: int, *, budget: int = DEFAULT_BUDGET,
            brute_force_only: bool = False, skip_dual: bool = False, strict: bool = False,
            predict_only: bool = False, dual_budget: int = DUAL_BUDGET_N,
            timing: bool = False) -> dict:
    """Run every check that applies to (p, m, k) and return the report dict.

    Raises InvalidParams / UnsupportedRegime / BudgetExceeded for inputs the run
    cannot handle; a contradiction with the closed forms shows up as a false
    verdict inside the report (see ``failures``).
    """
    clock = _Clock()
    allow = brute_force_only and not strict
    spec = validate(p, m, k, allow_unsupported=allow)
    if not predict_only and spec.N ** 2 > budget:
        raise BudgetExceeded(f"{spec.N ** 2} pairs exceed the enumeration budget {budget}",
                             pairs=spec.N ** 2, budget=budget)
    with clock("tower"):
        t = tower_for(spec)
    with clock("polynomials"):
        polys = code_polynomials(spec, t)
    poly = {"modulus": t.modulus.to_string(), **polys.as_dict()}

    predicted = predicted_distribution(spec) if spec.supported else None
    report = {key: None for key in REPORT_KEYS}
    report["params"] = spec.as_dict()
    report["polynomials"] = poly

    if not predict_only:
        with clock("enumerate"):
            dist = enumerate_distribution(spec, t, budget=budget,
                                          brute_force_only=brute_force_only)
        d = dist.as_dict()
        d.update(method=dist.method, checks=dist.checks)
        report["distribution"] = d
        if predicted is not None:
            report["match"] = dist == predicted
        if spec.supported:
            with clock("sets"):
                sets = intersection_set_counts(spec, t)
                pred_sets = predicted_set_counts(spec)
            report["sets"] = {"kind": spec.sum_kind, "counts": list(sets),
                              "predicted": list(pred_sets), "match": sets == pred_sets}
            with clock("sums"):
                report["sums"] = _sums_section(spec, t, sum(sets))

    if predicted is not None:
        report["predicted"] = predicted.as_dict()

    wants_dual = (spec.p == 3 and spec.regime is Regime.KE_EVEN_E_ODD
                  and not skip_dual and not predict_only)
    if wants_dual:
        try:
            with clock("dual"):
                cert = dual_min_distance_certify(spec, t, budget_n=dual_budget)
            report["dual"] = cert.as_dict()
            report["dual"]["expected_d"] = 4
        except BudgetExceeded:
            if strict:
                raise

    with clock("anomalies"):
        report["anomalies"] = anomalies(spec, predicted, polys.dual.to_string(), t)
    if timing:
        report["timing"] = clock.stages
    return report


def failures(report: dict) -> list:
    """Names of the verdicts that came out false (empty list = all verified)."""
    bad = []
    if report.get("match") is False:
        bad.append("distribution")
    sums = report.get("sums")
    if sums:
        if not sums["match"]:
            bad.append("sums")
        mom = sums["moments"]
        if mom["first_holds"] is False or mom["second_holds"] is False:
            bad.append("moments")
    sets = report.get("sets")
    if sets and not sets["match"]:
        bad.append("sets")
    dual = report.get("dual")
    if dual and (dual["d"] != dual["expected_d"] or not dual["optimal"]):
        bad.append("dual")
    return bad


def public(report: dict) -> dict:
    """The report without in-memory helper objects."""
    return {k: v for k, v in report.items() if not k.startswith("_")}


def load_schema() -> dict:
    """JSON schema for reports and error objects (shipped as package data)."""
    import json
    from importlib.resources import files

    return json.loads(files("threeweight").joinpath("report_schema.json").read_text())
