"""Command-line front end: `ltlsynth synth` and `ltlsynth check`.

synth exit codes: 0 separator found, 2 budget exhausted, 1 input error.
check exit codes: 0 formula separates, 2 it does not, 1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import kernels
from .dnc import synthesize_dnc
from .engine import EngineConfig, OUTCOME_FOUND, SynthesisResult, normalize_operators, synthesize
from .formulas import DEFAULT_OPERATORS, FormulaSyntaxError, parse_formula, to_text
from .traces import Layout, SpecError, Specification, parse_specification


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltlsynth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a minimum-cost separating formula")
    synth.add_argument("--input", required=True, help="trace specification file")
    synth.add_argument("--mode", choices=("enumerate", "dnc"), default="enumerate")
    synth.add_argument(
        "--ops",
        default=",".join(DEFAULT_OPERATORS),
        help="comma list from not,and,or,next,future,until",
    )
    synth.add_argument("--max-cost", type=int, default=20)
    synth.add_argument("--time-budget-s", type=float, default=300.0)
    synth.add_argument("--memory-budget-mb", type=int, default=8192)
    synth.add_argument("--batch-size", type=int, default=1 << 16)
    synth.add_argument("--threads", type=int, default=None, help="default: available parallelism")
    synth.add_argument("--dnc-threshold", type=int, default=8, help="direct-solve size bound in dnc mode")
    synth.add_argument("--format", choices=("text", "json"), default="text")

    check = sub.add_parser("check", help="check a formula against a specification")
    check.add_argument("--input", required=True, help="trace specification file")
    check.add_argument("--formula", required=True, help="formula text, e.g. '!(b U a)'")
    return parser


def _load_spec(path: str) -> Specification:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_specification(fh.read())


def _report(result: SynthesisResult, spec: Specification, args, config: EngineConfig) -> dict:
    formula = to_text(result.formula, spec.alphabet) if result.formula is not None else None
    return {
        "formula": formula,
        "cost": result.cost,
        "minimal": result.minimal,
        "constructed": result.stats.constructed,
        "unique": result.stats.unique,
        "elapsed_ms": round(result.stats.elapsed_s * 1000.0, 3),
        "mode": args.mode,
        "operator_set": list(config.operators),
        "budgets": {
            "max_cost": args.max_cost,
            "time_budget_s": args.time_budget_s,
            "memory_budget_mb": args.memory_budget_mb,
        },
        "outcome": result.outcome,
    }


def cmd_synth(args) -> int:
    try:
        spec = _load_spec(args.input)
        config = EngineConfig(
            operators=normalize_operators(s.strip() for s in args.ops.split(",")),
            max_cost=args.max_cost,
            time_budget_s=args.time_budget_s,
            memory_budget_mb=args.memory_budget_mb,
            batch_size=args.batch_size,
            threads=args.threads,
            dnc_threshold=args.dnc_threshold,
        )
    except (OSError, SpecError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    run = synthesize_dnc if args.mode == "dnc" else synthesize
    result = run(spec, config)
    report = _report(result, spec, args, config)

    if args.format == "json":
        print(json.dumps(report))
    else:
        if result.formula is not None:
            print(f"formula: {report['formula']}")
            print(f"cost: {result.cost}")
            print(f"minimal: {'yes' if result.minimal else 'no'}")
        else:
            print(f"no formula found ({result.failure or 'budget exhausted'})")
        print(
            f"constructed: {report['constructed']}  unique: {report['unique']}  "
            f"elapsed_ms: {report['elapsed_ms']}"
        )
    return 0 if result.outcome == OUTCOME_FOUND else 2


def cmd_check(args) -> int:
    try:
        spec = _load_spec(args.input)
        formula = parse_formula(args.formula, spec.alphabet)
    except (OSError, SpecError, FormulaSyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    cm = kernels.evaluate(formula, spec)
    layout = Layout.from_specification(spec)
    n_pos = len(spec.positives)
    ok = True
    for t, tr in enumerate(spec.traces):
        holds = bool(cm[t] & layout.dtype.type(1))
        want = t < n_pos
        kind = "positive" if want else "negative"
        status = "ok" if holds == want else "VIOLATION"
        ok &= holds == want
        print(f"trace {t} ({kind}): {'sat' if holds else 'unsat'}  {status}")
    print(f"separates: {'yes' if ok else 'no'}")
    return 0 if ok else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "synth":
        return cmd_synth(args)
    return cmd_check(args)


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
