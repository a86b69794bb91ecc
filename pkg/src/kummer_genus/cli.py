"""Command line entry point: analyze, verify, irreducibles.

Exit codes: 0 ok, 1 computation error, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ComputationError, GenusError, InputError, SchemaError
from .genus_core import bookkeeping
from .report import dumps, render_text, report_document
from .rt_poly import enumerate_monic_irreducibles, field_for_order
from .schema import load_spec
from .suites import SUITES, run_suite, verify_spec

EXIT_OK, EXIT_COMPUTATION, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


def _error(exc: Exception, code: int) -> int:
    doc = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SchemaError):
        doc["path"] = exc.path
        doc["message"] = exc.reason
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError("$", f"cannot read {path}: {exc.strerror}") from exc


def cmd_analyze(args) -> int:
    spec = load_spec(_read(args.spec))
    report = bookkeeping(spec)
    sys.stdout.write(render_text(report) if args.text else dumps(report_document(report)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.spec:
        result = verify_spec(load_spec(_read(args.spec)), seed=args.seed)
    else:
        if args.suite not in SUITES:
            raise SchemaError("suite", f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
        result = run_suite(args.suite, args.seed)
    sys.stdout.write(dumps(result.to_json()))
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_irreducibles(args) -> int:
    F = field_for_order(args.q)
    polys = enumerate_monic_irreducibles(F, args.deg)
    sys.stdout.write(dumps({"field": F.to_json(), "degree": args.deg, "count": len(polys),
                            "polys": [P.to_json() for P in polys]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kummer-genus",
                                     description="Genus fields of Kummer extensions of F_q(T).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a spec document")
    p.add_argument("spec", help="path to a spec JSON file")
    p.add_argument("--text", action="store_true", help="human-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="compare constructions with brute-force oracles")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--suite", default="kummer-small", help=f"one of {', '.join(SUITES)}")
    group.add_argument("--spec", help="verify a single spec file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("irreducibles", help="list monic irreducibles over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(func=cmd_irreducibles)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        return _error(exc, EXIT_INPUT)
    except (ComputationError, GenusError) as exc:
        return _error(exc, EXIT_COMPUTATION)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
