"""Command-line front-end.

Exit codes: 0 success, 1 parse/validation/usage error, 2 infeasible target,
3 oracle mismatch or failed sweep property.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .checks import SweepBounds, run_sweep
from .expr import InvalidExpression, ParseError, normalize, parse, render, validate
from .foliation import FoliationTarget, compare_bounds, feasible_foliation, plan
from .invariants import invariants
from .presentation import (
    HarveyPresent,
    abelianization_matrix,
    betti_from_presentation,
    presentation_of,
    smith_normal_form,
)
from .synth import SynthesisTarget, construct, feasible

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="corank",
        description="First Betti number and co-rank calculator for manifold expressions. "
                    "Quote expressions: '#' starts a shell comment.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in [
        ("parse", "parse, validate and print the canonical form"),
        ("invariants", "dimension, orientability, b1 and b1'"),
        ("oracle-check", "compare calculus b1 with the presentation oracle"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("expr", help='expression, e.g. "H4 # (S1 x S2)"')

    p = sub.add_parser("synthesize", parents=[common], help="build a manifold with given n, b', b")
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("--b-prime", type=_nonneg, required=True)
    p.add_argument("--b", type=_nonneg, required=True)
    p.add_argument("--orientable", action="store_true", help="require an orientable witness")

    p = sub.add_parser("foliate", parents=[common], help="foliation plan with m minimal components, c compact leaves")
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("-m", type=_nonneg, required=True)
    p.add_argument("-c", type=_nonneg, required=True)
    p.add_argument("--b-prime", type=_nonneg, required=True)
    p.add_argument("--b", type=_nonneg, required=True)

    p = sub.add_parser("compare", parents=[common], help="which of m+c<=b' and 2m+c<=b is stronger")
    p.add_argument("--b-prime", type=_nonneg, required=True)
    p.add_argument("--b", type=_nonneg, required=True)
    p.add_argument("-m", type=_nonneg)
    p.add_argument("-c", type=_nonneg)

    p = sub.add_parser("sweep", parents=[common], help="run the property sweeps")
    p.add_argument("--max-n", type=_nonneg, default=SweepBounds.max_n)
    p.add_argument("--max-b", type=_nonneg, default=SweepBounds.max_b)
    p.add_argument("--samples", type=_nonneg, default=SweepBounds.samples)
    p.add_argument("--seed", type=int, default=SweepBounds.seed)
    p.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    return parser


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _fail(args: argparse.Namespace, code: int, message: str, **extra) -> int:
    print(f"error: {message}", file=sys.stderr)
    if args.json:
        print(json.dumps({"error": message, "exit_code": code, **extra}, sort_keys=True))
    return code


def _record_text(rec) -> str:
    return (f"dim={rec.dim} orientable={str(rec.orientable).lower()} "
            f"b1={rec.b1} b1'={rec.b1_prime}")


def cmd_parse(args: argparse.Namespace) -> int:
    e = parse(args.expr)
    diags = validate(e)
    payload = {
        "expr": render(normalize(e)),
        "input": render(e),
        "diagnostics": [{"kind": d.kind, "message": d.message, "expr": render(d.expr)} for d in diags],
    }
    _emit(args, payload, render(normalize(e)))
    for d in diags:
        print(f"{d.kind}: {d.message}", file=sys.stderr)
    return EXIT_ERROR if diags else EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    e = parse(args.expr)
    rec = invariants(e)
    _emit(args, rec.to_json(e), f"{render(normalize(e))}\n{_record_text(rec)}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    e = parse(args.expr)
    rec = invariants(e)
    pres = presentation_of(e)
    snf = smith_normal_form(abelianization_matrix(pres), pres.n_generators)
    oracle_b1 = betti_from_presentation(pres)
    match = oracle_b1 == rec.b1
    payload = {**rec.to_json(e), "oracle_b1": oracle_b1, "torsion": list(snf.torsion),
               "smith_diagonal": list(snf.diagonal), "match": match}
    text = (f"{render(normalize(e))}\n"
            f"calculus b1={rec.b1}\noracle   b1={oracle_b1}\n"
            f"smith diagonal={list(snf.diagonal)} torsion={list(snf.torsion)}\n"
            f"{'match' if match else 'MISMATCH'}")
    _emit(args, payload, text)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_synthesize(args: argparse.Namespace) -> int:
    t = SynthesisTarget(args.n, args.b_prime, args.b, args.orientable)
    verdict = feasible(t)
    if not verdict:
        return _fail(args, EXIT_INFEASIBLE, verdict.reason, feasible=False)
    e = construct(t)
    rec = invariants(e)
    payload = {**rec.to_json(e), "expr": render(e), "feasible": True, "reason": verdict.reason}
    _emit(args, payload, f"{render(e)}\n{_record_text(rec)}")
    return EXIT_OK


def cmd_foliate(args: argparse.Namespace) -> int:
    try:
        t = FoliationTarget(args.n, args.m, args.c, args.b_prime, args.b)
    except ValueError as exc:
        return _fail(args, EXIT_ERROR, str(exc))
    verdict = feasible_foliation(t)
    if not verdict:
        return _fail(args, EXIT_INFEASIBLE, verdict.reason, feasible=False)
    p = plan(t)
    width = max(len(s["expr"]) for s in p.to_json()["summands"])
    rows = [f"{'summand':<{width}}  {'kind':<17} m_i c_i"]
    rows += [f"{s['expr']:<{width}}  {s['kind']:<17} {s['m_i']:>3} {s['c_i']:>3}"
             for s in p.to_json()["summands"]]
    rec = invariants(p.ambient)
    rows.append(f"ambient: {render(p.ambient)}")
    rows.append(f"totals: m={p.m} c={p.c}; {_record_text(rec)}")
    _emit(args, p.to_json(), "\n".join(rows))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        v = compare_bounds(args.b_prime, args.b, args.m, args.c)
    except ValueError as exc:
        return _fail(args, EXIT_ERROR, str(exc))
    _emit(args, {"verdict": v.value, "binding": v.binding}, f"{v.value}: {v.binding}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    bounds = SweepBounds(args.max_n, args.max_b, args.samples, args.seed)
    if bounds.max_b < 1:
        print("warning: no target with b >= 1 in the grid; grid checks are vacuous", file=sys.stderr)
    results = run_sweep(bounds, inject_bug=args.inject_bug)
    payload = {
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "checked": r.checked, "failures": len(r.failures),
                    "examples": r.failures[:3], "elapsed": round(r.elapsed, 3)} for r in results],
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.checked - len(r.failures)}/{r.checked}"
             f" ({r.elapsed:.2f}s)" for r in results]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if payload["passed"] else EXIT_MISMATCH


COMMANDS = {
    "parse": cmd_parse,
    "invariants": cmd_invariants,
    "oracle-check": cmd_oracle,
    "synthesize": cmd_synthesize,
    "foliate": cmd_foliate,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        return _fail(args, EXIT_ERROR, exc.pretty(), span=[exc.span.start, exc.span.end])
    except (InvalidExpression, HarveyPresent) as exc:
        return _fail(args, EXIT_ERROR, str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
