"""Exact synthesis of minimum-cost LTLf formulae from example traces.

Candidates are represented by packed bitvector characteristic matrices, all
connectives evaluate as branch-free word operations, and bottom-up
cost-ordered enumeration with observational-equivalence deduplication makes
the first separator found minimal.
"""

from .engine import EngineConfig, RunStats, SynthesisResult, synthesize
from .dnc import synthesize_dnc
from .formulas import (
    And,
    Atom,
    Formula,
    Future,
    Next,
    Not,
    Or,
    Until,
    cost,
    parse_formula,
    to_text,
)
from .kernels import evaluate, separates
from .oracle import min_cost_bruteforce, sat
from .traces import (
    Alphabet,
    InfeasibleSpecificationError,
    Layout,
    SpecError,
    SpecFormatError,
    Specification,
    Trace,
    parse_specification,
    serialize_specification,
    spec_from_steps,
    step_trace,
    word_trace,
)

__all__ = [
    "Alphabet",
    "And",
    "Atom",
    "EngineConfig",
    "Formula",
    "Future",
    "InfeasibleSpecificationError",
    "Layout",
    "Next",
    "Not",
    "Or",
    "RunStats",
    "SpecError",
    "SpecFormatError",
    "Specification",
    "SynthesisResult",
    "Trace",
    "Until",
    "cost",
    "evaluate",
    "min_cost_bruteforce",
    "parse_formula",
    "parse_specification",
    "sat",
    "separates",
    "serialize_specification",
    "spec_from_steps",
    "step_trace",
    "synthesize",
    "synthesize_dnc",
    "to_text",
    "word_trace",
]

__version__ = "0.1.0"
