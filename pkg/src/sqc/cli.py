"""Command-line interface.

Exit codes for `check` are part of the contract: 0 Complete, 1 Incomplete,
2 Invalid, 3 parse error. `prove` exits 0 with the script on stdout or 1 on
GaveUp; `countermodel` exits 0 when a countermodel is found, 1 when the
formula is valid within bounds, 2 when enumeration is refused as too large.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .calculus import Complete, Incomplete, Invalid, check_script
from .diagnostics import Diagnostic
from .grading import ManifestError, grade_batch, load_manifest
from .parser import FormulaError, parse_formula, parse_script
from .printer import print_script, print_sequent
from .prover import GaveUp, prove_bounded
from .semantics import (
    Countermodel,
    EnumerationTooLarge,
    Limits,
    ValidUpTo,
    check_validity,
    describe_interpretation,
)
from .service import serve


def _print_diagnostics(diagnostics, source: str = "") -> None:
    prefix = f"{source}:" if source else ""
    for d in diagnostics:
        print(f"{prefix}{d.render()}", file=sys.stderr)


def _cmd_check(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        text = path.read_bytes().decode("utf-8")
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return 3
    except UnicodeDecodeError:
        print(f"error: {path} does not decode as UTF-8", file=sys.stderr)
        return 3
    outcome = parse_script(text)
    errors = [d for d in outcome.diagnostics if d.severity == "error"]
    if outcome.script is None or errors:
        _print_diagnostics(outcome.diagnostics, str(path))
        return 3
    verdict = check_script(outcome.script.goal, outcome.script.steps)
    match verdict:
        case Complete():
            print("complete")
            return 0
        case Incomplete(open_goals=goals):
            print(f"incomplete: {len(goals)} open goal(s)")
            for seq in goals:
                print(f"  {print_sequent(seq)}")
            return 1
        case Invalid(step_index=index, diagnostics=diags):
            print(f"invalid at step {index + 1}")
            _print_diagnostics(diags, str(path))
            return 2
    raise AssertionError


def _parse_formula_arg(text: str) -> tuple[int, object | None]:
    try:
        return 0, parse_formula(text)
    except FormulaError as exc:
        _print_diagnostics(exc.diagnostics)
        return 3, None


def _cmd_prove(args: argparse.Namespace) -> int:
    status, formula = _parse_formula_arg(args.formula)
    if formula is None:
        return status
    limits = Limits(gamma_depth=args.gamma_depth, max_steps=args.max_steps)
    result = prove_bounded(formula, limits)
    if isinstance(result, GaveUp):
        print(f"gave up: {result.reason}", file=sys.stderr)
        return 1
    sys.stdout.write(print_script(result))
    return 0


def _cmd_countermodel(args: argparse.Namespace) -> int:
    status, formula = _parse_formula_arg(args.formula)
    if formula is None:
        return status
    limits = Limits(max_domain=args.max_domain)
    try:
        result = check_validity(formula, limits)
    except EnumerationTooLarge as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    match result:
        case Countermodel(interpretation=interp):
            print(describe_interpretation(interp))
            return 0
        case ValidUpTo(max_domain=n):
            print(f"valid in every interpretation up to domain size {n}")
            return 1
    raise AssertionError


def _cmd_grade(args: argparse.Namespace) -> int:
    try:
        manifest = load_manifest(args.manifest)
    except (ManifestError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        reports = grade_batch(manifest, args.submissions, args.out, jobs=args.jobs)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"graded {len(reports)} submission(s); summary at {Path(args.out) / 'summary.csv'}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(args.addr, args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqc",
        description="Sequent-calculus proof checking, proving, countermodels, and grading.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check one .sqc proof script")
    p_check.add_argument("file", help="path to a .sqc file")
    p_check.set_defaults(func=_cmd_check)

    p_prove = sub.add_parser("prove", help="search for a proof of a formula")
    p_prove.add_argument("formula")
    p_prove.add_argument("--gamma-depth", type=int, default=2)
    p_prove.add_argument("--max-steps", type=int, default=200)
    p_prove.set_defaults(func=_cmd_prove)

    p_cm = sub.add_parser("countermodel", help="search for a finite countermodel")
    p_cm.add_argument("formula")
    p_cm.add_argument("--max-domain", type=int, default=2)
    p_cm.set_defaults(func=_cmd_countermodel)

    p_grade = sub.add_parser("grade", help="grade a directory of submissions")
    p_grade.add_argument("--manifest", required=True)
    p_grade.add_argument("--submissions", required=True)
    p_grade.add_argument("--out", required=True)
    p_grade.add_argument("--jobs", type=int, default=1)
    p_grade.set_defaults(func=_cmd_grade)

    p_serve = sub.add_parser("serve", help="run the local check service")
    p_serve.add_argument("--port", type=int, default=7411)
    p_serve.add_argument("--addr", default="127.0.0.1")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
