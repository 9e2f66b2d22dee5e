"""Branch-free bit-parallel evaluation of formulae on characteristic matrices.

A characteristic matrix (CM) is an unsigned integer array with one lane per
trace (canonical order); bit j of lane t says the formula holds at position j
of trace t.  In memory position 0 is the least significant bit, so the
"shift left" of the string rendering (position 0 leftmost) is a shift toward
the LSB here.  Every kernel is a fixed sequence of word operations with no
data-dependent control flow, and each accepts arbitrary leading batch
dimensions: shape (T,) for one formula or (n, T) for n candidates at once.

Temporal lowering exploits suffix-contiguity (adjacent bits are a position
and its immediate suffix): X is a single shift, F is a logarithmic shift-or
cascade, and U is a parallel-prefix doubling recurrence.
"""

from __future__ import annotations

import numpy as np

from .formulas import And, Atom, Formula, Future, Next, Not, Or, Until
from .traces import Layout, Specification, atom_bitvectors


def _shift_schedule(width: int) -> tuple[int, ...]:
    # 1, 2, 4, ..., width/2 — six steps for 64-bit lanes
    return tuple(1 << k for k in range((width - 1).bit_length()))


def op_not(cm: np.ndarray, layout: Layout) -> np.ndarray:
    """Bitwise complement, padding bits forced back to zero."""
    return (~cm) & layout.masks


def op_and(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a & b


def op_or(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a | b


def op_next(cm: np.ndarray, layout: Layout) -> np.ndarray:
    """Shift every lane one position toward time 0; the last position gets 0."""
    return cm >> 1


def op_future(cm: np.ndarray, layout: Layout) -> np.ndarray:
    """Suffix-OR of every lane via shifts by powers of two.

    After the shift-by-s step, bit j holds the disjunction over positions
    j..j+2s-1, so log2(width) steps cover the whole lane.  Zero padding keeps
    the cascade exact at trace boundaries.
    """
    out = cm.copy()
    for s in _shift_schedule(layout.width):
        out |= out >> s
    return out


def op_until(a: np.ndarray, b: np.ndarray, layout: Layout) -> np.ndarray:
    """Parallel-prefix doubling for "a holds until b does".

    Bit j of the result is 1 iff some position k >= j satisfies b with a at
    every position in j..k-1.  Invariant after the shift-by-s step: r bit j
    answers that with k confined to j..j+2s-1, and q bit j says a holds on
    all of j..j+2s-1.  Doubling the window log2(width) times covers the lane.
    """
    r = b.copy()
    q = a.copy()
    for s in _shift_schedule(layout.width):
        r |= q & (r >> s)
        q &= q >> s
    return r & layout.masks


def evaluate(f: Formula, spec: Specification, dtype=np.uint64) -> np.ndarray:
    """Characteristic matrix of ``f`` over the specification's traces."""
    layout = Layout.from_specification(spec, dtype)
    atoms = atom_bitvectors(spec, dtype)
    return evaluate_on(f, atoms, layout)


def evaluate_on(f: Formula, atoms: np.ndarray, layout: Layout) -> np.ndarray:
    """Evaluate against precomputed atom rows (shared by engine and tests)."""
    if isinstance(f, Atom):
        return atoms[f.index]
    if isinstance(f, Not):
        return op_not(evaluate_on(f.child, atoms, layout), layout)
    if isinstance(f, Next):
        return op_next(evaluate_on(f.child, atoms, layout), layout)
    if isinstance(f, Future):
        return op_future(evaluate_on(f.child, atoms, layout), layout)
    if isinstance(f, And):
        return op_and(evaluate_on(f.left, atoms, layout), evaluate_on(f.right, atoms, layout))
    if isinstance(f, Or):
        return op_or(evaluate_on(f.left, atoms, layout), evaluate_on(f.right, atoms, layout))
    if isinstance(f, Until):
        return op_until(evaluate_on(f.left, atoms, layout), evaluate_on(f.right, atoms, layout), layout)
    raise TypeError(f"not a formula node: {f!r}")


def separates(cm: np.ndarray, layout: Layout) -> bool:
    """True iff every lane's position-0 bit matches the layout target."""
    one = layout.dtype.type(1)
    return bool(((cm & one) == layout.target).all())


def assert_padded(cm: np.ndarray, layout: Layout) -> None:
    """Debug check: no CM bit may survive beyond its trace length."""
    if (cm & ~layout.masks).any():
        raise AssertionError("characteristic matrix has bits beyond trace length")


def cs_from_string(bits: str, dtype=np.uint64) -> np.generic:
    """Characteristic-sequence literal, position 0 written leftmost."""
    word = 0
    for j, c in enumerate(bits):
        if c == "1":
            word |= 1 << j
        elif c != "0":
            raise ValueError(f"bad bit {c!r}")
    return np.dtype(dtype).type(word)


def cs_to_string(word, length: int) -> str:
    """Inverse of :func:`cs_from_string`."""
    w = int(word)
    return "".join("1" if (w >> j) & 1 else "0" for j in range(length))
