"""Command-line interface: verification, certification, audit, tables.

Exit codes: 0 success; 1 verification or certification failure that is not
pre-declared audit-flagged; 2 usage or expression parse error; 3 internal
inconsistency (tau strategy disagreement).
"""

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from statistics import median

from . import __version__
from .expr import EvalError, ParseError, eval_expr, parse
from .forms import (
    TAU_STRATEGIES,
    TauStrategyDisagreement,
    sigma_table,
    tau,
    tau_range,
)
from .identities import (
    AUDIT_FLAGGED,
    audit_all,
    builtin_registry,
    certify,
    check_congruence,
    make_context,
    verify_range,
)
from .quasidecomp import NotInGradedSpace, decompose

DEFAULT_TRUNCATION = 64
DEFAULT_RANGE = 500

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _rat(x):
    return str(Fraction(x))


def _report_json(truncation, results):
    return {
        "tool-version": __version__,
        "truncation": truncation,
        "results": results,
    }


def _result_entry(record, report):
    first = None
    if report.first_failure is not None:
        n, lhs, rhs = report.first_failure
        first = {"n": n, "lhs": _rat(lhs), "rhs": _rat(rhs)}
    status = report.status
    if status == "failed" and getattr(record, "status", None) == AUDIT_FLAGGED:
        status = "audit-flagged"
    return {
        "id": record.id,
        "anchor": record.anchor,
        "range": [1, report.limit] if report.limit else None,
        "status": status,
        "first_failure": first,
    }


def _emit(payload):
    print(json.dumps(payload, indent=2))


def _select_identities(registry, key):
    if key in (None, "all"):
        return list(registry.identities)
    if key not in registry.by_id:
        raise SystemExit(f"unknown identity id {key!r}")
    record = registry.by_id[key]
    if record not in registry.identities:
        raise SystemExit(f"{key!r} is a congruence; use the congruences command")
    return [record]


def _pool_map(fn, items, threads):
    if threads == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    workers = None if threads == 0 else threads
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def cmd_tau(args):
    print(tau(args.n, args.strategy))
    return EXIT_OK


def cmd_tau_table(args):
    values = tau_range(args.max_n, args.strategy)
    rows = [(n, values[n]) for n in range(1, args.max_n + 1)]
    if args.format == "csv":
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "value"])
            writer.writerows(rows)
    else:
        payload = {
            "tool-version": __version__,
            "strategy": args.strategy,
            "values": [[n, v] for n, v in rows],
        }
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    print(f"wrote tau(1..{args.max_n}) to {args.out}")
    return EXIT_OK


def cmd_sigma(args):
    table = sigma_table(args.k, args.max_n)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "value"])
        writer.writerows((n, table[n]) for n in range(1, args.max_n + 1))
    print(f"wrote sigma_{args.k}(1..{args.max_n}) to {args.out}")
    return EXIT_OK


def cmd_verify(args):
    registry = builtin_registry()
    records = _select_identities(registry, args.identity)
    ctx = make_context(args.max_n)
    reports = _pool_map(lambda r: verify_range(r, args.max_n, ctx), records, args.threads)
    results = [_result_entry(r, rep) for r, rep in zip(records, reports)]
    if args.format == "json":
        _emit(_report_json(args.max_n, [
            dict(entry, failures=[] if entry["first_failure"] is None else [entry["first_failure"]])
            for entry in results
        ]))
    else:
        for entry in results:
            line = f"{entry['id']}: {entry['status']}"
            if entry["first_failure"]:
                f = entry["first_failure"]
                line += f" (first failure n={f['n']}: lhs={f['lhs']}, rhs={f['rhs']})"
            print(line)
    bad = [e for e in results if e["status"] == "failed"]
    return EXIT_VERIFICATION if bad else EXIT_OK


def cmd_certify(args):
    registry = builtin_registry()
    records = _select_identities(registry, args.identity)
    reports = _pool_map(certify, records, args.threads)
    failures = 0
    for record, report in zip(records, reports):
        status = report.status
        if status == "failed" and record.status == AUDIT_FLAGGED:
            status = "audit-flagged"
        elif status == "failed":
            failures += 1
        line = f"{record.id}: {status} (bound {report.certification_bound})"
        if report.detail:
            line += f" - {report.detail}"
        print(line)
    return EXIT_VERIFICATION if failures else EXIT_OK


def cmd_congruences(args):
    registry = builtin_registry()
    ctx = make_context(args.max_n)
    failures = 0
    for record in registry.congruences:
        report = check_congruence(record, args.max_n, ctx)
        line = f"{record.id}: {report.status} (mod {record.modulus}"
        if record.gcd_condition != 1:
            line += f", gcd(n,{record.gcd_condition})=1"
        line += ")"
        if report.first_failure:
            n, lhs, rhs = report.first_failure
            line += f" first failure n={n}: lhs={lhs}, rhs={rhs}"
            failures += 1
        print(line)
    return EXIT_VERIFICATION if failures else EXIT_OK


def cmd_audit(args):
    report = audit_all(args.max_n)
    for entry in report.entries:
        line = f"{entry.id}: {entry.status}"
        if entry.status != "verified" and entry.fit is not None and entry.fit.success:
            deltas = ", ".join(
                f"{c.description}: stated {c.stated}, fitted {c.fitted}"
                for c in entry.fit.discrepancies
            )
            line += f" [refit: {deltas}]"
        print(line)
    for entry in report.congruences:
        print(f"{entry.id}: {entry.status}")
    print("-- findings --")
    for finding in report.findings:
        print(f"{finding.id}: claimed {finding.claimed}; computed {finding.computed}")
        print(f"  {finding.detail}")
    print(f"audit {'ok' if report.ok else 'FAILED'}")
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_decompose(args):
    try:
        form = eval_expr(parse(args.expr), args.trunc)
    except (ParseError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        record = decompose(form, args.weight, args.depth)
    except NotInGradedSpace as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    coords = {label: _rat(c) for label, c in record.coordinates if c != 0}
    print(json.dumps(coords, indent=2))
    return EXIT_OK


def cmd_eval(args):
    try:
        form = eval_expr(parse(args.expr), args.trunc)
    except (ParseError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.coeff is not None:
        print(_rat(form.coefficient(args.coeff)))
    else:
        weight = "inhomogeneous" if form.weight is None else form.weight
        print(f"weight: {weight}, depth bound: {form.depth}")
        print(form.series.to_text(max_terms=12))
    return EXIT_OK


def cmd_bench(args):
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for name in strategies:
        if name not in TAU_STRATEGIES:
            print(f"error: unknown strategy {name!r}", file=sys.stderr)
            return EXIT_USAGE
    print(f"tau-table benchmark, n <= {args.max_n}, {args.repeat} repeats")
    for name in strategies:
        timings = []
        for _ in range(args.repeat):
            start = time.perf_counter_ns()
            tau_range(args.max_n, name)
            timings.append(time.perf_counter_ns() - start)
        per_value = median(timings) / args.max_n
        print(f"{name:12s} median {per_value:12.1f} ns/value over {args.repeat} runs")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tauforms",
        description="exact q-expansion engine: tau identities, brackets, decompositions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="one tau value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=TAU_STRATEGIES, default="product")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("tau-table", help="tau(1..N) to CSV or JSON")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--strategy", choices=TAU_STRATEGIES, default="product")
    p.set_defaults(func=cmd_tau_table)

    p = sub.add_parser("sigma", help="sigma_k(1..N) to CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("verify", help="pointwise residual verification")
    p.add_argument("--identity", default="all")
    p.add_argument("--max-n", type=int, default=DEFAULT_RANGE)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="series-level certification")
    p.add_argument("--identity", default="all")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("audit", help="verify + certify everything, refit failures")
    p.add_argument("--max-n", type=int, default=DEFAULT_RANGE)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("congruences", help="check every catalogued congruence")
    p.add_argument("--max-n", type=int, default=DEFAULT_RANGE)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("decompose", help="graded coordinates of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eval", help="evaluate an expression to a q-series")
    p.add_argument("--expr", required=True)
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--coeff", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="tau-table wall time per strategy")
    p.add_argument("--strategies", default=",".join(TAU_STRATEGIES))
    p.add_argument("--max-n", type=int, default=512)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except TauStrategyDisagreement as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        return int(exc.code) if exc.code is not None else EXIT_OK


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
