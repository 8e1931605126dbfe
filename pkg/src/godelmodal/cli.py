"""Command-line front end.

Exit codes are uniform across subcommands: 0 valid/pass/no-witness, 1
invalid/witness-found/checker-rejected, 2 usage or parse error, 3 resource
budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .atomic import SaturationBudgetError
from .axioms import regression_cases
from .formula import Logic, ParseError, parse_formula, render_formula
from .hypersequent import (
    CutEliminationError,
    check_derivation_located,
    eliminate_cuts,
    interp_hyper,
    load_derivation,
    render_hyper,
    save_derivation,
)
from .prover import (
    FragmentError,
    ProverConfig,
    SearchLimitExceeded,
    check_trace,
    decide,
    decide_formula,
    diagnostic_to_json,
    trace_to_json,
)
from .relations import le, parse_sequent, render_sequent
from .formula import TOP
from .semantics import (
    ModelError,
    countermodel_search,
    eval_formula,
    load_model,
    model_to_json,
    sequent_holds_at,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_input(text: str):
    """Formula or sequent-of-relations text; formulas F become top <= F."""
    if "<" in text or ";" in text:
        # '<>' is the diamond token; a bare '<' or '<=' marks relation syntax
        stripped = text.replace("<>", "")
        if "<" in stripped or ";" in text:
            return parse_sequent(text)
    return frozenset({le(TOP, parse_formula(text))})


def _config(args) -> ProverConfig:
    return ProverConfig(
        leaf_mode=getattr(args, "leaf_mode", "gfp"),
        max_saturation_branches=getattr(args, "max_branches", 200_000),
        max_depth=getattr(args, "max_depth", 64),
    )


def cmd_decide(args) -> int:
    logic = Logic.from_name(args.logic)
    try:
        s = _parse_input(args.input)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        verdict = decide(logic, s, _config(args))
    except FragmentError as exc:
        print(f"fragment error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchLimitExceeded, SaturationBudgetError) as exc:
        print(f"search limit exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.format == "json":
        payload = {"logic": logic.value, "input": render_sequent(s),
                   "verdict": "valid" if verdict.valid else "invalid"}
        if args.trace and verdict.valid:
            payload["trace"] = trace_to_json(verdict.trace)
        if verdict.diagnostic is not None:
            payload["diagnostic"] = diagnostic_to_json(verdict.diagnostic)
        print(json.dumps(payload, indent=1))
    else:
        print("valid" if verdict.valid else "invalid")
        if args.trace and verdict.valid:
            print(json.dumps(trace_to_json(verdict.trace), indent=1))
        if verdict.diagnostic is not None:
            diag = verdict.diagnostic
            print(f"failing leaf: {render_sequent(diag.leaf)}")
            assignment = ", ".join(f"{k}={v}" for k, v in sorted(diag.assignment.items()))
            print(f"refuting assignment (abstracted): {assignment}")
            for var, formula in sorted(diag.abstraction.items()):
                print(f"  {var} abstracts {formula}")
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_check_proof(args) -> int:
    try:
        d = load_derivation(args.file)
    except (ParseError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"malformed proof file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    modal = args.calculus == "ggk-box"
    where = check_derivation_located(d, modal)
    if where is None:
        print(f"ok: derives {render_hyper(d.conclusion)}")
        return EXIT_OK
    print(f"rejected at node path {list(where)}", file=sys.stderr)
    return EXIT_INVALID


def cmd_cut_elim(args) -> int:
    try:
        d = load_derivation(args.infile)
    except (ParseError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"malformed proof file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = eliminate_cuts(d)
    except (ValueError, CutEliminationError) as exc:
        print(f"cut elimination rejected input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    save_derivation(out, args.outfile)
    print(f"cut-free derivation of {render_hyper(out.conclusion)} "
          f"({out.size()} nodes) written to {args.outfile}")
    return EXIT_OK


def cmd_countermodel(args) -> int:
    logic = Logic.from_name(args.logic)
    try:
        s = _parse_input(args.input)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    found = countermodel_search(logic, s, args.max_worlds, args.grid,
                                mode=args.mode, seed=args.seed,
                                samples=args.samples)
    if found is None:
        print("no countermodel within bounds (not a validity proof)")
        return EXIT_OK
    model, world = found
    print(json.dumps({"world": world, "model": model_to_json(model)}, indent=1))
    return EXIT_INVALID


def cmd_eval(args) -> int:
    try:
        model = load_model(args.model)
        f = parse_formula(args.formula)
        value = eval_formula(model, f, args.world)
    except (ParseError, ModelError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{value.numerator}/{value.denominator}" if value.denominator != 1
          else str(value.numerator))
    return EXIT_OK


def cmd_selftest(args) -> int:
    failures = 0
    for name, logic, formula, expected in regression_cases():
        verdict = decide_formula(logic, formula)
        ok = verdict.valid == expected
        replay = True
        if verdict.valid:
            replay = check_trace(logic, frozenset({le(TOP, formula)}), verdict.trace)
        status = "ok" if ok and replay else "FAIL"
        if status == "FAIL":
            failures += 1
        print(f"{status:4s} {logic.value:12s} {name:12s} "
              f"{render_formula(formula):48s} -> "
              f"{'valid' if verdict.valid else 'invalid'}")
    print(f"{'pass' if failures == 0 else 'FAIL'}: "
          f"{len(regression_cases()) - failures} ok, {failures} failing")
    return EXIT_OK if failures == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="godelmodal",
        description="Decision procedures and proof tools for Godel modal logics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide validity of a formula or sequent")
    p.add_argument("--logic", required=True,
                   choices=[l.value for l in Logic])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--trace", action="store_true",
                   help="emit the proof trace on valid inputs")
    p.add_argument("--leaf-mode", choices=["gfp", "exhaustive", "both"],
                   default="gfp")
    p.add_argument("--max-branches", type=int, default=200_000)
    p.add_argument("--max-depth", type=int, default=64)
    p.add_argument("input", help="formula, or relations 'F <= G ; F < G ; ...'")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("check-proof", help="check a hypersequent proof file")
    p.add_argument("--calculus", choices=["gg", "ggk-box"], default="ggk-box")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("cut-elim", help="eliminate cuts from a proof file")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.set_defaults(func=cmd_cut_elim)

    p = sub.add_parser("countermodel", help="bounded countermodel search")
    p.add_argument("--logic", required=True, choices=[l.value for l in Logic])
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("input")
    p.set_defaults(func=cmd_countermodel)

    p = sub.add_parser("eval", help="evaluate a formula in a model file")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--world", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("selftest", help="run the embedded axiom regression corpus")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
