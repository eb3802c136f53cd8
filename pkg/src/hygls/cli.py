"""Command-line front end.

Subcommands:
    suite <config>                          run verification suites from a JSON config
    scan <p> <q> <A> <Nmin> <Nmax> <out>    witness-ratio scan over Z_N, CSV output
    fundamental <psi-spec> <out>            tabulate a fundamental function, CSV output
    opnorm <factors> <A> <p> <q>            numerical operator-norm search

Exit codes: 0 all checks pass, 1 a check failed, 2 config/usage error,
3 I/O error.  The environment variable SEED overrides the config seed (and
only the seed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .groups import make_group, make_measure_pair
from .hy import k_const, opnorm_search
from .suite import (
    ConfigError,
    Report,
    SuiteConfig,
    fundamental_table,
    load_config,
    parse_psi_spec,
    run_suite,
    scan_ratio,
)

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3


def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="override the suite seed")
    parent.add_argument(
        "--tolerance",
        action="append",
        default=None,
        metavar="NAME=VALUE",
        help="override a named tolerance (repeatable); a bare value overrides all",
    )
    parent.add_argument(
        "--mode",
        choices=["as-derived", "as-written"],
        default=None,
        help="discrete-chain realization (default from config: as-derived)",
    )
    parent.add_argument("--json", default=None, metavar="PATH", help="report output path")
    parent.add_argument("--plot", action="store_true", help="render figures next to the outputs")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _global_flags()
    parser = argparse.ArgumentParser(
        prog="hygls",
        description="Verification suites for sharp transform-norm bounds on finite abelian groups",
        parents=[parent],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_suite = sub.add_parser("suite", parents=[parent], help="run suites from a JSON config")
    p_suite.add_argument("config", help="path to the JSON config")

    p_scan = sub.add_parser("scan", parents=[parent], help="witness-ratio scan over Z_N")
    p_scan.add_argument("p", type=float)
    p_scan.add_argument("q", type=float)
    p_scan.add_argument("A", type=float)
    p_scan.add_argument("Nmin", type=int)
    p_scan.add_argument("Nmax", type=int)
    p_scan.add_argument("out", help="output CSV path")

    p_fund = sub.add_parser("fundamental", parents=[parent], help="tabulate a fundamental function")
    p_fund.add_argument("psi_spec", help="weight spec, e.g. one, power:0.5, exp, const:2@1,4")
    p_fund.add_argument("out", help="output CSV path")
    p_fund.add_argument(
        "--deltas",
        default="0.0625,0.25,0.5,1,2,4,16",
        help="comma-separated delta grid",
    )
    p_fund.add_argument("--span", default=None, metavar="S1,S2", help="truncation range")

    p_op = sub.add_parser("opnorm", parents=[parent], help="operator-norm search")
    p_op.add_argument("factors", help="cyclic factors, e.g. 8 or 8x3 or 8,3")
    p_op.add_argument("A", type=float)
    p_op.add_argument("p", type=float)
    p_op.add_argument("q", type=float)
    return parser


def _parse_factors(text: str) -> List[int]:
    parts = text.replace("x", ",").split(",")
    try:
        return [int(part) for part in parts if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad factor list {text!r}") from exc


def _apply_overrides(config: SuiteConfig, args: argparse.Namespace) -> None:
    env_seed = os.environ.get("SEED")
    if env_seed is not None:
        try:
            config.seed = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"environment SEED must be an integer, got {env_seed!r}") from exc
    if args.seed is not None:
        config.seed = args.seed
    if args.mode is not None:
        config.mode = args.mode
    for item in args.tolerance or []:
        if "=" in item:
            name, _, value = item.partition("=")
            if name not in config.tolerances:
                raise ConfigError(f"unknown tolerance {name!r}")
            config.tolerances[name] = float(value)
        else:
            value = float(item)
            config.tolerances = {k: value for k in config.tolerances}
    config.validate()


def _cmd_suite(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    _apply_overrides(config, args)
    report = run_suite(config)
    out_path = args.json or config.report_path
    try:
        Path(out_path).write_text(report.to_json(), encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write report {out_path!r}: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    for name in sorted(report.summary):
        counts = report.summary[name]
        status = "ok" if counts["fail"] == 0 else "FAIL"
        print(f"{status:4s} {name}: {counts['pass']} pass, {counts['fail']} fail")
    print(f"report: {out_path} ({len(report.records)} records, {report.wall_time_s:.3f}s)")
    if args.plot:
        from .plotting import figure_path_for, render_report

        try:
            render_report(report.to_dict(), figure_path_for(out_path))
        except OSError as exc:
            print(f"error: cannot write figure: {exc}", file=sys.stderr)
            return EXIT_IO_ERROR
    return EXIT_OK if report.failures == 0 else EXIT_CHECK_FAILURE


def _cmd_scan(args: argparse.Namespace) -> int:
    try:
        rows = scan_ratio(args.p, args.q, args.A, args.Nmin, args.Nmax, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        from .plotting import figure_path_for, render_scan

        try:
            render_scan(rows, args.p, args.q, args.A, figure_path_for(args.out))
        except OSError as exc:
            print(f"error: cannot write figure: {exc}", file=sys.stderr)
            return EXIT_IO_ERROR
    return EXIT_OK


def _cmd_fundamental(args: argparse.Namespace) -> int:
    deltas = [float(part) for part in args.deltas.split(",") if part.strip()]
    span = None
    if args.span is not None:
        parts = args.span.split(",")
        if len(parts) != 2:
            raise ConfigError(f"--span needs S1,S2, got {args.span!r}")
        span = (
            float(parts[0]),
            math.inf if parts[1].strip() in ("inf", "Infinity") else float(parts[1]),
        )
    psi = parse_psi_spec(args.psi_spec)
    try:
        rows = fundamental_table(args.psi_spec, deltas, args.out, span=span)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        from .plotting import figure_path_for, render_fundamental

        try:
            render_fundamental(
                rows, args.psi_spec, span or (psi.p_lo, psi.b), figure_path_for(args.out)
            )
        except OSError as exc:
            print(f"error: cannot write figure: {exc}", file=sys.stderr)
            return EXIT_IO_ERROR
    return EXIT_OK


def _cmd_opnorm(args: argparse.Namespace) -> int:
    group = make_group(_parse_factors(args.factors))
    pair = make_measure_pair(group, args.A)
    seed = args.seed if args.seed is not None else 7
    result = opnorm_search(pair, args.p, args.q, seed=seed)
    k = k_const(args.p, args.q, args.A)
    print(f"group: {group!r}  A={args.A:g}  (p,q)=({args.p:g},{args.q:g})")
    print(f"estimate: {result.estimate:.12g}")
    print(f"sharp constant: {k:.12g}")
    print(f"estimate/constant: {result.estimate / k:.12g}")
    print(f"converged: {result.converged}  iterations: {result.iterations}  best start: {result.start}")
    if args.json:
        payload = {
            "factors": list(group.factors),
            "A": args.A,
            "p": args.p,
            "q": args.q,
            "estimate": result.estimate,
            "sharp_constant": k,
            "converged": result.converged,
            "iterations": result.iterations,
            "start": result.start,
        }
        try:
            Path(args.json).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.json!r}: {exc}", file=sys.stderr)
            return EXIT_IO_ERROR
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the config-error code
        return int(exc.code or 0)
    handlers = {
        "suite": _cmd_suite,
        "scan": _cmd_scan,
        "fundamental": _cmd_fundamental,
        "opnorm": _cmd_opnorm,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
