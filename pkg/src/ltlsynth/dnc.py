"""Divide-and-conquer synthesis for specifications too large to solve in one go.

Positives and negatives are halved in canonical order, the four sub-problems
(P_i, N_j) are solved recursively, and the results recombine as
(f11 & f12) | (f21 & f22): any trace of P lands in some P_i and satisfies
that disjunct; any trace of N lands in some N_j and falsifies both.  The
recombined formula separates but is in general not minimal, and no
simplification is attempted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from functools import reduce

from . import oracle
from .engine import (
    OUTCOME_EXHAUSTED,
    OUTCOME_FOUND,
    EngineConfig,
    RunStats,
    SynthesisResult,
    synthesize,
)
from .formulas import And, Formula, Or, cost as formula_cost
from .traces import Specification, Trace, validate_feasible


@dataclass(frozen=True)
class SplitPlan:
    p_split: tuple[tuple[Trace, ...], tuple[Trace, ...]]
    n_split: tuple[tuple[Trace, ...], tuple[Trace, ...]]
    threshold: int
    budget_per_leaf: EngineConfig


def _halve(traces: tuple[Trace, ...]) -> tuple[tuple[Trace, ...], tuple[Trace, ...]]:
    cut = (len(traces) + 1) // 2
    return traces[:cut], traces[cut:]


def split(spec: Specification, threshold: int = 8, budget_per_leaf: EngineConfig | None = None) -> SplitPlan:
    """Halve positives and negatives by canonical order (first ceil(n/2) vs rest)."""
    return SplitPlan(
        p_split=_halve(spec.positives),
        n_split=_halve(spec.negatives),
        threshold=threshold,
        budget_per_leaf=budget_per_leaf or EngineConfig(),
    )


def synthesize_dnc(spec: Specification, config: EngineConfig = EngineConfig()) -> SynthesisResult:
    """Split-solve-recombine; sound but not minimal above the direct-solve threshold.

    Specifications of at most ``config.dnc_threshold`` traces delegate to the
    plain engine (and inherit its minimality).  Any leaf failure fails the
    whole run, with the leaf identified in ``failure``.
    """
    validate_feasible(spec)
    stats = RunStats()
    t0 = time.perf_counter()
    deadline = t0 + config.time_budget_s
    formula, minimal, failure = _solve(spec, config, deadline, stats, "root")
    stats.elapsed_s = time.perf_counter() - t0
    if formula is None:
        return SynthesisResult(
            formula=None, cost=None, minimal=False, outcome=OUTCOME_EXHAUSTED, stats=stats, failure=failure
        )
    if not oracle.separates_by_sat(spec, formula):
        raise RuntimeError("internal error: recombined formula fails the reference semantics")
    return SynthesisResult(
        formula=formula,
        cost=formula_cost(formula),
        minimal=minimal,
        outcome=OUTCOME_FOUND,
        stats=stats,
    )


def _solve(
    spec: Specification,
    config: EngineConfig,
    deadline: float,
    stats: RunStats,
    path: str,
) -> tuple[Formula | None, bool, str | None]:
    # an effective threshold below 2 could not make progress (a 1+1 split
    # reproduces its own leaf), so clamp
    if spec.trace_count <= max(config.dnc_threshold, 2):
        remaining = max(0.0, deadline - time.perf_counter())
        sub = synthesize(spec, replace(config, time_budget_s=remaining))
        stats.constructed += sub.stats.constructed
        stats.unique += sub.stats.unique
        stats.max_cost_reached = max(stats.max_cost_reached, sub.stats.max_cost_reached)
        if sub.outcome != OUTCOME_FOUND:
            return None, False, f"leaf {path}: {sub.failure or 'budget exhausted'}"
        return sub.formula, sub.minimal, None

    plan = split(spec, config.dnc_threshold, config)
    p_sides = [(i, p) for i, p in enumerate(plan.p_split, start=1) if p]
    if not p_sides:
        # no positives at all: a single conjunction rejecting every N_j suffices
        p_sides = [(1, ())]
    n_sides = [(j, n) for j, n in enumerate(plan.n_split, start=1) if n]
    if not n_sides:
        n_sides = [(0, ())]

    disjuncts = []
    for i, pi in p_sides:
        conjuncts = []
        for j, nj in n_sides:
            leaf = Specification(spec.alphabet, pi, nj)
            label = f"{path}.P{i}N{j}"
            f, _, failure = _solve(leaf, config, deadline, stats, label)
            if f is None:
                return None, False, failure
            conjuncts.append(f)
        disjuncts.append(reduce(And, conjuncts))
    return reduce(Or, disjuncts), False, None
