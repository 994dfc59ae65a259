"""Command-line front end: bound, poly, table, sweep, verify.

Exit codes: 0 success, 2 invalid input or weights, 3 no threshold (the
degree polynomial has non-positive leading coefficient), 4 violated internal
invariant or failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import cache
from .errors import InadmissibleWeightsError, JetboundError
from .geometry import GeometrySpec
from .morse import MorseReport, compute_report, default_weights, is_admissible
from .sweep import run_sweep
from .tower import TowerContext
from .verify import run_all

TABLE_CELLS = [(n, k) for n in range(2, 6) for k in range(n, 6)]


def _report_json_bytes(report: MorseReport) -> bytes:
    return (json.dumps(report.to_json_dict(), indent=2) + "\n").encode()


def _relations_text(ctx: TowerContext) -> str:
    return "\n".join(str(q) for q in ctx.relations.relations)


def cached_report(
    spec: GeometrySpec,
    k: int,
    weights: Optional[Sequence[int]],
    cache_dir: str,
) -> tuple[MorseReport, bytes]:
    """Fetch or compute one report; returns it with its canonical JSON bytes."""
    ctx = TowerContext(spec.n, k)
    w = default_weights(k).a if weights is None else tuple(weights)
    key = cache.cache_key(spec.n, ctx.r, k, spec.token, w, _relations_text(ctx))
    stored = cache.fetch(cache_dir, key)
    if stored is not None:
        return MorseReport.from_json_dict(json.loads(stored)), stored
    report = compute_report(spec, k, w, rels=ctx.relations)
    payload = _report_json_bytes(report)
    cache.store(cache_dir, key, payload)
    return report, payload


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise InadmissibleWeightsError(f"weights {text!r} are not a comma-separated integer list")
    if not is_admissible(weights):
        raise InadmissibleWeightsError(f"weights {weights} violate the admissibility chain")
    return weights


def _print_report_text(report: MorseReport) -> None:
    print(f"dim       : {report.n}")
    print(f"order     : {report.k}")
    print(f"geometry  : {report.geometry}")
    print(f"weights   : {','.join(str(w) for w in report.weights)}")
    print(f"total dim : {report.total_dim}")
    print(f"P(d)      : {report.morse_poly}")
    print(f"leading   : {report.leading_coeff}")
    if report.threshold is not None:
        print(f"threshold : {report.threshold}")
    else:
        print("threshold : none (leading coefficient is not positive)")
    if report.k == 1:
        print("note      : order 1 is a degenerate tower; threshold is indicative only")
    print(f"elapsed   : {report.elapsed_ms} ms")


def _report_csv(report: MorseReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["dim", "order", "geometry", "weights", "total_dim", "leading_coeff", "threshold", "polynomial"]
    )
    writer.writerow(
        [
            report.n,
            report.k,
            report.geometry,
            ";".join(str(w) for w in report.weights),
            report.total_dim,
            str(report.leading_coeff),
            "" if report.threshold is None else report.threshold,
            ";".join(str(c) for c in report.morse_poly.coeffs),
        ]
    )
    return buf.getvalue()


def cmd_bound(args) -> int:
    if args.dim < 2:
        print("bound requires --dim >= 2", file=sys.stderr)
        return 2
    spec = GeometrySpec.from_token(args.geometry, args.dim)
    weights = _parse_weights(args.weights) if args.weights else None
    report, payload = cached_report(spec, args.order, weights, cache.resolve_cache_dir(args.cache_dir))
    if args.format == "json":
        sys.stdout.write(payload.decode())
    elif args.format == "csv":
        sys.stdout.write(_report_csv(report))
    else:
        _print_report_text(report)
    return 0 if report.threshold is not None else 3


def cmd_poly(args) -> int:
    if args.dim < 2:
        print("poly requires --dim >= 2", file=sys.stderr)
        return 2
    spec = GeometrySpec.from_token(args.geometry, args.dim)
    weights = _parse_weights(args.weights) if args.weights else None
    report, _ = cached_report(spec, args.order, weights, cache.resolve_cache_dir(args.cache_dir))
    if args.format == "json":
        print(json.dumps({"dim": report.n, "order": report.k, "geometry": report.geometry,
                          "polynomial": [str(c) for c in report.morse_poly.coeffs]}, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["power", "coefficient"])
        for i, c in enumerate(report.morse_poly.coeffs):
            writer.writerow([i, str(c)])
        sys.stdout.write(buf.getvalue())
    else:
        print(report.morse_poly)
    return 0


def _table_worker(job: tuple[int, int]) -> tuple[tuple[int, int], dict]:
    n, k = job
    spec = GeometrySpec.from_token("log", n)
    return (n, k), compute_report(spec, k).to_json_dict()


def cmd_table(args) -> int:
    cache_dir = cache.resolve_cache_dir(args.cache_dir)
    reports: dict[tuple[int, int], MorseReport] = {}
    pending = []
    for n, k in TABLE_CELLS:
        ctx = TowerContext(n, k)
        key = cache.cache_key(n, ctx.r, k, "log", default_weights(k).a, _relations_text(ctx))
        stored = cache.fetch(cache_dir, key)
        if stored is not None:
            reports[(n, k)] = MorseReport.from_json_dict(json.loads(stored))
        else:
            pending.append(((n, k), key))
    if pending:
        if args.threads > 1:
            with ProcessPoolExecutor(max_workers=args.threads) as pool:
                computed = dict(pool.map(_table_worker, [cell for cell, _ in pending]))
        else:
            computed = dict(_table_worker(cell) for cell, _ in pending)
        for (cell, key) in pending:
            report = MorseReport.from_json_dict(computed[cell])
            cache.store(cache_dir, key, _report_json_bytes(report))
            reports[cell] = report
    if args.format == "json":
        cells = [
            {"dim": n, "order": k, "threshold": reports[(n, k)].threshold}
            for n, k in TABLE_CELLS
        ]
        print(json.dumps({"geometry": "log", "cells": cells}, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["dim", "order", "threshold"])
        for n, k in TABLE_CELLS:
            writer.writerow([n, k, reports[(n, k)].threshold])
        sys.stdout.write(buf.getvalue())
    else:
        orders = range(2, 6)
        print("geometry: log")
        print("  n\\k " + "".join(f"{k:>8}" for k in orders))
        for n in range(2, 6):
            row = [f"{n:>5}"]
            for k in orders:
                cell = reports.get((n, k))
                row.append(f"{cell.threshold:>8}" if cell else f"{'-':>8}")
            print("".join(row))
    return 0


def cmd_sweep(args) -> int:
    if args.dim < 2:
        print("sweep requires --dim >= 2", file=sys.stderr)
        return 2
    if args.budget < 1:
        print("sweep requires --budget >= 1", file=sys.stderr)
        return 2
    spec = GeometrySpec.from_token(args.geometry, args.dim)
    result = run_sweep(spec, args.order, args.budget, threads=args.threads)
    best = result.best
    if args.format == "json":
        print(
            json.dumps(
                {
                    "dim": args.dim,
                    "order": args.order,
                    "geometry": args.geometry,
                    "budget": args.budget,
                    "evaluated": result.evaluated,
                    "best": best.to_json_dict(),
                },
                indent=2,
            )
        )
    elif args.format == "csv":
        sys.stdout.write(_report_csv(best))
    else:
        print(f"evaluated : {result.evaluated} candidates")
        print(f"best      : {','.join(str(w) for w in best.weights)}")
        _print_report_text(best)
    return 0 if best.threshold is not None else 3


def cmd_verify(args) -> int:
    results = run_all(max_n=args.dim_max)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(
            json.dumps(
                {"checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
                indent=2,
            )
        )
    else:
        for r in results:
            line = f"{'PASS' if r.passed else 'FAIL'}  {r.name}"
            if r.detail:
                line += f"  ({r.detail})"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 4


def _add_common(parser: argparse.ArgumentParser, *, dim_order: bool = True) -> None:
    if dim_order:
        parser.add_argument("--dim", type=int, required=True, help="base dimension n")
        parser.add_argument("--order", type=int, required=True, help="jet order k")
        parser.add_argument(
            "--geometry", choices=("log", "compact"), default="log", help="base geometry"
        )
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--cache-dir", default=None, help="result cache directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetbound",
        description="Exact degree thresholds for invariant jet differentials on jet towers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="compute one degree threshold")
    _add_common(p_bound)
    p_bound.add_argument("--weights", default=None, help="comma-separated level weights")
    p_bound.set_defaults(func=cmd_bound)

    p_poly = sub.add_parser("poly", help="print the degree polynomial P(d)")
    _add_common(p_poly)
    p_poly.add_argument("--weights", default=None, help="comma-separated level weights")
    p_poly.set_defaults(func=cmd_poly)

    p_table = sub.add_parser("table", help="thresholds for all 2 <= n <= k <= 5, log geometry")
    _add_common(p_table, dim_order=False)
    p_table.add_argument("--threads", type=int, default=1)
    p_table.set_defaults(func=cmd_table)

    p_sweep = sub.add_parser("sweep", help="search admissible weight vectors")
    _add_common(p_sweep)
    p_sweep.add_argument("--budget", type=int, default=10, help="number of candidates")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the structural verification matrix")
    p_verify.add_argument("--dim-max", type=int, default=3)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InadmissibleWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JetboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
