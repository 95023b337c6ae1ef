"""Command-line front end.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .quad_arith import FieldConfig
from .rds import InducedDatum, certify_rds, parse_sigma_pairs, parse_tau
from .report import (
    LEMMA_INDEX,
    SUITES,
    RunConfig,
    cone_records,
    dumps,
    run,
    structure_suite,
    summary_lines,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by itself; keep the message format
        raise UsageError(message)


def _field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="odd residual characteristic (default 5)")
    p.add_argument("--d", type=str, help="radicand of E = F(sqrt d), e.g. 2 or 5 or 1/3 (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unitary-rds", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run verification suites and write a JSON report")
    _field_args(p_run)
    p_run.add_argument("--rank", type=int, help="matrix size m = 2n (default 4)")
    p_run.add_argument("--suites", type=str, help=f"comma list from {','.join(SUITES)} or 'all'")
    p_run.add_argument("--seed", type=int, help="sampling seed (default 0)")
    p_run.add_argument("--samples", type=int, help="samples per sampling check (default 100)")
    p_run.add_argument("--out", type=str, help="report path (default: standard output only)")
    p_run.add_argument("--tau", type=str, help="tau' for the certify suite, e.g. steinberg:k=2,rho=chi1")
    p_run.add_argument("--sigma-pairs", type=str, help="Galois twist pairs, e.g. chi1:chi2")
    p_run.add_argument("--config", type=str, help="JSON config file; flags win on conflict")

    p_st = sub.add_parser("structure", help="involution and parabolic structure checks")
    _field_args(p_st)
    p_st.add_argument("--m", type=int, required=True)
    p_st.add_argument("--check", type=str, default="all", help="'all' or a comma list of lemma ids")
    p_st.add_argument("--seed", type=int, default=0)
    p_st.add_argument("--samples", type=int, default=100)

    p_cones = sub.add_parser("cones", help="cone containment records per (Theta, Omega, w)")
    p_cones.add_argument("--rank", type=int, required=True)
    p_cones.add_argument("--all", action="store_true", help="all maximal Omega, not only Delta minus alpha_n")

    p_cert = sub.add_parser("certify", help="certify Ind(tau' x s(tau')) on GL_2n")
    p_cert.add_argument("--n", type=int, required=True)
    p_cert.add_argument("--tau", type=str, required=True)
    p_cert.add_argument("--sigma-pairs", type=str, default="")
    return parser


def _field(p: int | None, d: str | None) -> FieldConfig:
    try:
        return FieldConfig(p if p is not None else 5, Fraction(d) if d is not None else Fraction(2))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid field: {exc}") from exc


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    fdata = data.get("field", {})

    def pick(flag, key, default):
        return flag if flag is not None else data.get(key, default)

    p = args.p if args.p is not None else fdata.get("p", data.get("p"))
    d = args.d if args.d is not None else fdata.get("d", data.get("d"))
    suites = pick(args.suites, "suites", "all")
    if isinstance(suites, str):
        suites = SUITES if suites == "all" else [s.strip() for s in suites.split(",") if s.strip()]
    try:
        return RunConfig(
            field=_field(p, None if d is None else str(d)),
            rank=int(pick(args.rank, "rank", 4)),
            suites=tuple(suites),
            seed=int(pick(args.seed, "seed", 0)),
            out=pick(args.out, "out", None),
            tau=pick(args.tau, "tau", None),
            sigma_pairs=pick(args.sigma_pairs, "sigma_pairs", None),
            samples=int(pick(args.samples, "samples", 100)),
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    try:
        report = run(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = dumps(report)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    for line in summary_lines(report):
        print(line, file=sys.stderr if not cfg.out else sys.stdout)
    return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL


def _cmd_structure(args: argparse.Namespace) -> int:
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    checks = None
    if args.check != "all":
        checks = {c.strip() for c in args.check.split(",")}
        unknown = checks - set(LEMMA_INDEX)
        if unknown:
            raise UsageError(f"unknown checks: {sorted(unknown)}")
    cfg = RunConfig(field=_field(args.p, args.d), rank=args.m, suites=("structure",), seed=args.seed, samples=args.samples)
    records = sorted(structure_suite(cfg, checks), key=lambda r: r["lemma"])
    sys.stdout.write(json.dumps({"m": args.m, "field": cfg.field.to_json(), "records": records}, sort_keys=True, indent=2) + "\n")
    return EXIT_PASS if all(r["status"] == "pass" for r in records) else EXIT_FAIL


def _cmd_cones(args: argparse.Namespace) -> int:
    if args.rank < 2:
        raise UsageError("--rank must be at least 2")
    rows = cone_records(args.rank, all_omegas=args.all, box=args.rank <= 6)
    sys.stdout.write(json.dumps(rows, sort_keys=True, indent=2) + "\n")
    ok = all(r["verdict"] and r["certificate_valid"] and r["oracle_agreement"] is not False for r in rows)
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_certify(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    try:
        tau = parse_tau(args.tau, parse_sigma_pairs(args.sigma_pairs), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if tau.size != args.n:
        raise UsageError(f"tau has size {tau.size}, expected n = {args.n}")
    cert = certify_rds(InducedDatum(tau))
    sys.stdout.write(json.dumps(cert.to_json(), sort_keys=True, indent=2) + "\n")
    return EXIT_PASS if cert.rds else EXIT_FAIL


COMMANDS = {"run": _cmd_run, "structure": _cmd_structure, "cones": _cmd_cones, "certify": _cmd_certify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
