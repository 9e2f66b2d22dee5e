"""Traces, alphabets and specifications, plus the on-disk trace file format.

A specification is an ordered pair (positives, negatives) of finite traces
over a fixed proposition alphabet.  The order fixed at parse time (positives
first, then negatives, file order within each block) defines the row order of
every characteristic matrix downstream, so it must never be permuted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Hard cap on trace length: one trace must fit a single machine word.
LANE_WIDTH = 64

#: Cap on alphabet size; keeps per-atom bit tables small and printable.
MAX_ATOMS = 26

_ATOMS_DIRECTIVE = "#atoms:"


class SpecError(ValueError):
    """Base class for specification construction/parsing errors."""


class SpecFormatError(SpecError):
    """Malformed trace file; carries a 1-based line (and column when known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", col {column}"
            where += ": "
        super().__init__(where + message)


class InfeasibleSpecificationError(SpecError):
    """A trace occurs in both the positive and the negative set."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered proposition names; order defines the columns of the file format."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.names) <= MAX_ATOMS:
            raise SpecError(f"alphabet must have 1..{MAX_ATOMS} propositions, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise SpecError("duplicate proposition names")
        if any(not n for n in self.names):
            raise SpecError("empty proposition name")

    @classmethod
    def of(cls, names: Iterable[str]) -> "Alphabet":
        return cls(tuple(names))

    @classmethod
    def default(cls, n: int) -> "Alphabet":
        return cls(tuple(f"p{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SpecError(f"unknown proposition {name!r}") from None


@dataclass(frozen=True)
class Trace:
    """A finite trace: one set of true propositions (as indices) per timestep."""

    steps: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.steps) == 0:
            raise SpecError("empty trace")
        if len(self.steps) > LANE_WIDTH:
            raise SpecError(f"trace has {len(self.steps)} steps; at most {LANE_WIDTH} supported")

    @property
    def length(self) -> int:
        return len(self.steps)


def step_trace(steps: Sequence[Iterable[str]], alphabet: Alphabet) -> Trace:
    """Build a trace from per-step collections of proposition names.

    With single-character names a step can be given as a plain string,
    e.g. ``step_trace(["a", "ac", ""], alphabet)``.
    """
    return Trace(tuple(frozenset(alphabet.index(p) for p in step) for step in steps))


def word_trace(word: str, alphabet: Alphabet) -> Trace:
    """Build a trace whose steps are singleton sets, one per character."""
    return step_trace([c for c in word], alphabet)


@dataclass(frozen=True)
class Specification:
    """Positive and negative example traces over a shared alphabet."""

    alphabet: Alphabet
    positives: tuple[Trace, ...]
    negatives: tuple[Trace, ...]

    def __post_init__(self):
        if not self.positives and not self.negatives:
            raise SpecError("specification has no traces")
        for tr in self.positives + self.negatives:
            for step in tr.steps:
                for p in step:
                    if not 0 <= p < self.alphabet.n:
                        raise SpecError(f"proposition index {p} out of range")

    @property
    def traces(self) -> tuple[Trace, ...]:
        """All traces in canonical order: positives first, then negatives."""
        return self.positives + self.negatives

    @property
    def trace_count(self) -> int:
        return len(self.positives) + len(self.negatives)

    @property
    def max_length(self) -> int:
        return max(tr.length for tr in self.traces)


def validate_feasible(spec: Specification) -> None:
    """Reject specifications where some trace is both positive and negative."""
    seen = {tr.steps: i for i, tr in enumerate(spec.positives)}
    for j, tr in enumerate(spec.negatives):
        if tr.steps in seen:
            raise InfeasibleSpecificationError(
                f"infeasible specification: positive trace {seen[tr.steps]} equals negative trace {j}"
            )


def spec_from_steps(
    positives: Sequence[Sequence[Iterable[str]]],
    negatives: Sequence[Sequence[Iterable[str]]],
    alphabet: Alphabet | str,
) -> Specification:
    """Convenience constructor from per-step name collections."""
    if isinstance(alphabet, str):
        alphabet = Alphabet.of(alphabet)
    return Specification(
        alphabet,
        tuple(step_trace(steps, alphabet) for steps in positives),
        tuple(step_trace(steps, alphabet) for steps in negatives),
    )


def smallest_lane_dtype(max_length: int) -> np.dtype:
    """Narrowest unsigned dtype whose word holds ``max_length`` trace positions."""
    for dt in (np.uint8, np.uint16, np.uint32, np.uint64):
        if max_length <= np.dtype(dt).itemsize * 8:
            return np.dtype(dt)
    raise SpecError(f"trace length {max_length} exceeds {LANE_WIDTH}")


@dataclass(frozen=True, eq=False)
class Layout:
    """Fixed bit layout shared by all characteristic matrices of one spec.

    Row t covers trace t (canonical order); bit j of a row is position j.
    ``masks[t]`` has bits 0..lengths[t]-1 set; ``target[t]`` is the value the
    position-0 bit must take for the CM to separate (1 on positives, 0 on
    negatives).
    """

    lengths: tuple[int, ...]
    masks: np.ndarray
    target: np.ndarray

    @classmethod
    def from_specification(cls, spec: Specification, dtype=np.uint64) -> "Layout":
        dtype = np.dtype(dtype)
        lengths = tuple(tr.length for tr in spec.traces)
        if max(lengths) > dtype.itemsize * 8:
            raise SpecError(f"trace length {max(lengths)} does not fit lane dtype {dtype}")
        masks = np.array([(1 << n) - 1 for n in lengths], dtype=dtype)
        target = np.array(
            [1] * len(spec.positives) + [0] * len(spec.negatives), dtype=dtype
        )
        masks.flags.writeable = False
        target.flags.writeable = False
        return cls(lengths, masks, target)

    @property
    def trace_count(self) -> int:
        return len(self.lengths)

    @property
    def dtype(self) -> np.dtype:
        return self.masks.dtype

    @property
    def width(self) -> int:
        return self.masks.dtype.itemsize * 8


def atom_bitvectors(spec: Specification, dtype=np.uint64) -> np.ndarray:
    """Per-proposition characteristic matrices, shape (n_atoms, n_traces).

    Bit j of row (p, t) is set iff proposition p holds at step j of trace t;
    bits at and beyond the trace length are zero.
    """
    traces = spec.traces
    out = np.zeros((spec.alphabet.n, len(traces)), dtype=dtype)
    for t, tr in enumerate(traces):
        for j, step in enumerate(tr.steps):
            for p in step:
                out[p, t] |= np.dtype(dtype).type(1) << np.dtype(dtype).type(j)
    out.flags.writeable = False
    return out


def parse_specification(text: str) -> Specification:
    """Parse and validate a trace file (see module docstring for the format)."""
    atom_names: tuple[str, ...] | None = None
    arity: int | None = None
    positives: list[Trace] = []
    negatives: list[Trace] = []
    current = positives
    seen_separator = False
    seen_trace = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(_ATOMS_DIRECTIVE):
            if seen_trace or seen_separator:
                raise SpecFormatError("atoms directive must precede all traces", lineno)
            if atom_names is not None:
                raise SpecFormatError("duplicate atoms directive", lineno)
            names = tuple(line[len(_ATOMS_DIRECTIVE):].split())
            if not names:
                raise SpecFormatError("atoms directive names no propositions", lineno)
            try:
                Alphabet(names)
            except SpecError as e:
                raise SpecFormatError(str(e), lineno) from None
            atom_names = names
            arity = len(names)
            continue
        if line.startswith("#"):
            continue
        if line == "---":
            if seen_separator:
                raise SpecFormatError("more than one --- separator", lineno)
            seen_separator = True
            current = negatives
            continue
        steps, arity = _parse_trace_line(raw, lineno, arity)
        seen_trace = True
        try:
            current.append(Trace(steps))
        except SpecError as e:
            raise SpecFormatError(str(e), lineno) from None

    if not positives and not negatives:
        raise SpecFormatError("no traces in file", None)
    alphabet = Alphabet(atom_names) if atom_names else Alphabet.default(arity or 0)
    spec = Specification(alphabet, tuple(positives), tuple(negatives))
    validate_feasible(spec)
    return spec


def _parse_trace_line(
    raw: str, lineno: int, arity: int | None
) -> tuple[tuple[frozenset[int], ...], int]:
    steps: list[frozenset[int]] = []
    offset = 0
    leading = len(raw) - len(raw.lstrip())
    body = raw.strip()
    for k, chunk in enumerate(body.split(";"), start=1):
        values = chunk.split(",")
        col = leading + offset + 1
        if values == [""]:
            raise SpecFormatError("empty timestep", lineno, col)
        if arity is None:
            arity = len(values)
        elif len(values) != arity:
            raise SpecFormatError(
                f"timestep {k} has {len(values)} value(s), expected {arity}", lineno, col
            )
        true_props = []
        vcol = col
        for p, v in enumerate(values):
            tok = v.strip()
            if tok == "1":
                true_props.append(p)
            elif tok != "0":
                raise SpecFormatError(f"expected 0 or 1, got {v!r}", lineno, vcol)
            vcol += len(v) + 1
        steps.append(frozenset(true_props))
        offset += len(chunk) + 1
    return tuple(steps), arity


def serialize_specification(spec: Specification) -> str:
    """Render a specification in the trace file format (round-trips via parse)."""
    lines = [_ATOMS_DIRECTIVE + " " + " ".join(spec.alphabet.names)]
    lines += [_trace_line(tr, spec.alphabet.n) for tr in spec.positives]
    lines.append("---")
    lines += [_trace_line(tr, spec.alphabet.n) for tr in spec.negatives]
    return "\n".join(lines) + "\n"


def _trace_line(tr: Trace, n_atoms: int) -> str:
    return ";".join(
        ",".join("1" if p in step else "0" for p in range(n_atoms)) for step in tr.steps
    )
