"""threeweight command line.

    threeweight analyze P M K [--budget N] [--brute-force-only] [--skip-dual]
                              [--strict] [--predict-only] [--csv PATH] [--timing]
    threeweight verify-suite CONFIG [--strict] [--json] [--jobs J] [--budget N]

Exit codes: 0 all verified, 1 usage/parameter error, 2 theory mismatch,
3 budget exceeded.  Reports and error objects go to stdout as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .analysis import analyze, failures, public
from .codes import DEFAULT_BUDGET
from .errors import (BudgetExceeded, InvalidParams, UnsupportedRegime, WorkbenchError)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _error_object(kind, message, details=None) -> dict:
    return {"error": {"type": kind, "message": message, "details": details or {}}}


def exit_code_for(err: Exception) -> int:
    if isinstance(err, (InvalidParams, UnsupportedRegime, UsageError)):
        return EXIT_USAGE
    if isinstance(err, BudgetExceeded):
        return EXIT_BUDGET
    return EXIT_MISMATCH       # any internal oracle disagreement


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="threeweight", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command")
    a = sub.add_parser("analyze", help="analyze one (p, m, k) triple")
    a.add_argument("p", type=int)
    a.add_argument("m", type=int)
    a.add_argument("k", type=int)
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="max number of (a,b) pairs to enumerate (default 3^12)")
    a.add_argument("--brute-force-only", action="store_true",
                   help="entrywise enumeration only; also admits unsupported triples")
    a.add_argument("--skip-dual", action="store_true")
    a.add_argument("--strict", action="store_true",
                   help="unsupported triples and skipped dual checks become errors")
    a.add_argument("--predict-only", action="store_true",
                   help="closed forms and published-value notes only, no enumeration")
    a.add_argument("--csv", metavar="PATH", help="write the weight table as CSV")
    a.add_argument("--timing", action="store_true", help="add per-stage timings")
    v = sub.add_parser("verify-suite", help="analyze every triple listed in a config file")
    v.add_argument("config")
    v.add_argument("--strict", action="store_true",
                   help="unsupported or over-budget triples count as failures")
    v.add_argument("--json", action="store_true", help="JSON summary instead of a table")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return ap


# ------------------------------------------------------------------ analyze

def _csv_rows(report) -> str:
    sec = report.get("distribution") or report.get("predicted")
    if sec is None:
        return "weight,count\n"
    rows = ["weight,count"] + [f"{w},{c}" for w, c in
                               sorted((int(w), c) for w, c in sec["entries"].items())]
    return "\n".join(rows) + "\n"


def cmd_analyze(args, out=None) -> int:
    out = out or sys.stdout
    try:
        report = analyze(args.p, args.m, args.k, budget=args.budget,
                         brute_force_only=args.brute_force_only, skip_dual=args.skip_dual,
                         strict=args.strict, predict_only=args.predict_only,
                         timing=args.timing)
    except WorkbenchError as err:
        out.write(_dump({"error": err.as_dict()}) + "\n")
        return exit_code_for(err)
    report = public(report)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(_csv_rows(report))
    out.write(_dump(report) + "\n")
    bad = failures(report)
    if bad:
        print("verification failed: " + ", ".join(bad), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ------------------------------------------------------------- verify-suite

def parse_config(text: str) -> list:
    """One "p m k" per line; '#' starts a comment; blank lines ignored."""
    triples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise UsageError(f"line {lineno}: expected 'p m k', got {raw.strip()!r}")
        try:
            triples.append(tuple(int(x) for x in parts))
        except ValueError:
            raise UsageError(f"line {lineno}: non-integer entry in {raw.strip()!r}") from None
    return triples


def run_case(triple, budget=DEFAULT_BUDGET, strict=False) -> dict:
    """Status of one triple: PASS, FAIL, UNSUPPORTED, PREDICTED (over budget), INVALID."""
    p, m, k = triple
    case = {"p": p, "m": m, "k": k}
    try:
        report = analyze(p, m, k, budget=budget, strict=strict)
        bad = failures(report)
        case.update(status="FAIL" if bad else "PASS", failed=bad,
                    match=report["match"], min_weight=report["distribution"]["min_weight"],
                    anomalies=report["anomalies"])
    except UnsupportedRegime as err:
        case.update(status="UNSUPPORTED", failed=[], message=str(err))
    except InvalidParams as err:
        case.update(status="INVALID", failed=[], message=str(err))
    except BudgetExceeded as err:
        # fall back to the closed forms so the published-value notes still appear
        report = analyze(p, m, k, predict_only=True)
        case.update(status="PREDICTED", failed=[], message=str(err),
                    min_weight=report["predicted"]["min_weight"],
                    anomalies=report["anomalies"])
    except WorkbenchError as err:
        case.update(status="FAIL", failed=[err.kind], message=str(err))
    return case


def _suite_exit(cases, strict) -> int:
    statuses = {c["status"] for c in cases}
    if "FAIL" in statuses:
        return EXIT_MISMATCH
    if "INVALID" in statuses or (strict and "UNSUPPORTED" in statuses):
        return EXIT_USAGE
    if strict and "PREDICTED" in statuses:
        return EXIT_BUDGET
    return EXIT_OK


def _table(cases) -> str:
    lines = [f"{'p':>3} {'m':>3} {'k':>3}  {'status':<12} {'d_min':>7}  note"]
    for c in cases:
        note = ", ".join(c.get("failed") or []) or c.get("message", "")
        if not note and c.get("anomalies"):
            note = f"{len(c['anomalies'])} published-value note(s)"
        dmin = c.get("min_weight")
        lines.append(f"{c['p']:>3} {c['m']:>3} {c['k']:>3}  {c['status']:<12} "
                     f"{'' if dmin is None else dmin:>7}  {note}")
    counts = {}
    for c in cases:
        counts[c["status"]] = counts.get(c["status"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items())) or "0 cases"
    lines.append(f"summary: {len(cases)} case(s): {summary}")
    return "\n".join(lines) + "\n"


def cmd_verify_suite(args, out=None) -> int:
    out = out or sys.stdout
    try:
        with open(args.config) as fh:
            triples = parse_config(fh.read())
    except OSError as err:
        out.write(_dump(_error_object("UsageError", f"cannot read config: {err}")) + "\n")
        return EXIT_USAGE
    except UsageError as err:
        out.write(_dump(_error_object("UsageError", str(err))) + "\n")
        return EXIT_USAGE
    jobs = max(1, args.jobs)
    if jobs > 1 and len(triples) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map keeps config order whatever the completion order
            cases = list(pool.map(run_case, triples, [args.budget] * len(triples),
                                  [args.strict] * len(triples)))
    else:
        cases = [run_case(tr, args.budget, args.strict) for tr in triples]
    code = _suite_exit(cases, args.strict)
    if args.json:
        out.write(_dump({"cases": cases, "exit_code": code}) + "\n")
    else:
        out.write(_table(cases))
    return code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as err:
        sys.stdout.write(_dump(_error_object("UsageError", str(err))) + "\n")
        return EXIT_USAGE
    if args.command == "analyze":
        return cmd_analyze(args)
    if args.command == "verify-suite":
        return cmd_verify_suite(args)
    sys.stdout.write(_dump(_error_object("UsageError", "missing command")) + "\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
