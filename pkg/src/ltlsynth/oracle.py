"""Reference finite-trace semantics and a dedup-free brute-force search.

Everything here is deliberately naive: `sat` is plain structural recursion
with the quantifier definitions spelled out and no memoisation, so it shares
no machinery (and hence no correlated bugs) with the bit kernels it is used
to check.  Never put this module on a synthesis hot path.
"""

from __future__ import annotations

from typing import Iterator

from .formulas import (
    DEFAULT_OPERATORS,
    And,
    Atom,
    Formula,
    Future,
    Next,
    Not,
    Or,
    Until,
)
from .traces import Specification, Trace


def sat(tr: Trace, i: int, f: Formula) -> bool:
    """Does ``f`` hold at position ``i`` of ``tr``?

    Positions at or beyond the trace end satisfy nothing, which surfaces as
    X being false at the last position and F/U quantifying only over the
    remaining positions.
    """
    if not 0 <= i < tr.length:
        raise ValueError(f"position {i} out of range for trace of length {tr.length}")
    return _sat(tr, i, f)


def _sat(tr: Trace, i: int, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.index in tr.steps[i]
    if isinstance(f, Not):
        return not _sat(tr, i, f.child)
    if isinstance(f, And):
        return _sat(tr, i, f.left) and _sat(tr, i, f.right)
    if isinstance(f, Or):
        return _sat(tr, i, f.left) or _sat(tr, i, f.right)
    if isinstance(f, Next):
        return i + 1 < tr.length and _sat(tr, i + 1, f.child)
    if isinstance(f, Future):
        return any(_sat(tr, j, f.child) for j in range(i, tr.length))
    if isinstance(f, Until):
        return any(
            _sat(tr, j, f.right) and all(_sat(tr, k, f.left) for k in range(i, j))
            for j in range(i, tr.length)
        )
    raise TypeError(f"not a formula node: {f!r}")


def separates_by_sat(spec: Specification, f: Formula) -> bool:
    """Separation checked entirely through the reference semantics."""
    return all(sat(tr, 0, f) for tr in spec.positives) and not any(
        sat(tr, 0, f) for tr in spec.negatives
    )


def enumerate_formulas(
    n_atoms: int, operators: tuple[str, ...] = DEFAULT_OPERATORS, max_cost: int = 6
) -> Iterator[tuple[int, Formula]]:
    """Yield every formula tree of cost 1..max_cost in deterministic order.

    No deduplication of any kind: commutative operators yield both argument
    orders.  Counts grow superexponentially; intended for small instances.
    """
    ops = set(operators)
    levels: list[list[Formula]] = [[]]  # index = cost, 0 unused
    for c in range(1, max_cost + 1):
        level: list[Formula] = []
        if c == 1:
            level.extend(Atom(i) for i in range(n_atoms))
        else:
            for name, node in (("not", Not), ("next", Next), ("future", Future)):
                if name in ops:
                    level.extend(node(f) for f in levels[c - 1])
            for name, node in (("and", And), ("until", Until), ("or", Or)):
                if name in ops:
                    for c1 in range(1, c - 1):
                        for left in levels[c1]:
                            for right in levels[c - 1 - c1]:
                                level.append(node(left, right))
        for f in level:
            yield c, f
        levels.append(level)


def min_cost_bruteforce(
    spec: Specification,
    operators: tuple[str, ...] = DEFAULT_OPERATORS,
    max_cost: int = 8,
) -> tuple[int, Formula] | None:
    """Smallest separating formula by exhaustive syntax enumeration, or None.

    The independent ground truth for the engine's minimality claim; checks
    every tree via `sat`, never via the bit kernels.
    """
    for c, f in enumerate_formulas(spec.alphabet.n, operators, max_cost):
        if separates_by_sat(spec, f):
            return c, f
    return None
