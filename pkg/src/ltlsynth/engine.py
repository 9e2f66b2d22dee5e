"""Bottom-up, cost-ordered candidate enumeration over characteristic matrices.

Candidates of cost c are built from stored candidates of costs summing to
c-1, evaluated in vectorised batches by the bit kernels, deduplicated by CM
value (observational equivalence: one representative per CM, first
construction wins) and checked for separation on construction.  The first
separating CM is therefore of minimum cost over the configured operator set.

Generation order is deterministic: operator order (!, X, F, &, U, then | if
enabled), then left cost ascending, then left id, then right id; commutative
operators draw only unordered pairs (left id <= right id).  Worker threads
only parallelise batch construction; batch boundaries and merge order are
fixed by the config, so results are identical for any thread count.
"""

from __future__ import annotations

import os
import time
from bisect import bisect_right
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels, oracle
from .formulas import (
    DEFAULT_OPERATORS,
    OPERATOR_NAMES,
    And,
    Atom,
    Formula,
    Future,
    Next,
    Not,
    Or,
    Until,
)
from .traces import Layout, Specification, atom_bitvectors, smallest_lane_dtype, validate_feasible

OP_ATOM, OP_NOT, OP_NEXT, OP_FUTURE, OP_AND, OP_UNTIL, OP_OR = range(7)

_UNARY_TAGS = (("not", OP_NOT), ("next", OP_NEXT), ("future", OP_FUTURE))
_BINARY_TAGS = (("and", OP_AND), ("until", OP_UNTIL), ("or", OP_OR))
_COMMUTATIVE = frozenset((OP_AND, OP_OR))

OUTCOME_FOUND = "found"
OUTCOME_EXHAUSTED = "exhausted"


def normalize_operators(operators) -> tuple[str, ...]:
    """Validate operator names and fix their canonical order."""
    requested = set(operators)
    unknown = requested - set(OPERATOR_NAMES)
    if unknown:
        raise ValueError(f"unknown operators: {sorted(unknown)}")
    return tuple(name for name in OPERATOR_NAMES if name in requested)


@dataclass(frozen=True)
class EngineConfig:
    operators: tuple[str, ...] = DEFAULT_OPERATORS
    max_cost: int = 20
    time_budget_s: float = 300.0
    memory_budget_mb: int = 8192
    batch_size: int = 1 << 16
    threads: int | None = None  # None: use available parallelism
    exhaustive: bool = False  # keep enumerating after the first separator
    dnc_threshold: int = 8  # divide-and-conquer direct-solve size bound

    def __post_init__(self):
        if self.max_cost < 1:
            raise ValueError("max_cost must be >= 1")
        if self.time_budget_s < 0 or self.memory_budget_mb <= 0:
            raise ValueError("budgets must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class RunStats:
    constructed: int = 0  # candidate CMs built, pre-dedup
    unique: int = 0  # store size, post-dedup
    elapsed_s: float = 0.0
    max_cost_reached: int = 0


@dataclass
class SynthesisResult:
    formula: Formula | None
    cost: int | None
    minimal: bool
    outcome: str
    stats: RunStats
    failure: str | None = None


@dataclass
class _Level:
    cms: np.ndarray  # (n, T)
    op: np.ndarray  # (n,) uint8
    left: np.ndarray  # (n,) int64; atom index for OP_ATOM entries
    right: np.ndarray  # (n,) int64; -1 for unary/atom entries
    base: int  # global id of the level's first entry

    @property
    def n(self) -> int:
        return len(self.cms)


class CandidateStore:
    """Cost-indexed store of unique CMs with construction provenance.

    Internally lanes use the narrowest dtype that fits the longest trace
    (uint8/16/32/64); values are bit-identical to the canonical 64-bit form.
    """

    def __init__(self, spec: Specification, dtype=None):
        self.spec = spec
        self.dtype = np.dtype(dtype) if dtype is not None else smallest_lane_dtype(spec.max_length)
        self.layout = Layout.from_specification(spec, self.dtype)
        self.atoms = atom_bitvectors(spec, self.dtype)
        self.trace_count = spec.trace_count
        row_bytes = self.trace_count * self.dtype.itemsize
        self.key_words = -(-row_bytes // 8)
        self.levels: list[_Level] = []  # levels[c-1] holds cost c
        self.seen: set = set()
        self.approx_bytes = 0

    @property
    def total(self) -> int:
        return sum(level.n for level in self.levels)

    def level(self, cost: int) -> _Level:
        return self.levels[cost - 1]

    def entry(self, gid: int) -> tuple[int, int, int]:
        bases = [lv.base for lv in self.levels]
        li = bisect_right(bases, gid) - 1
        local = gid - bases[li]
        lv = self.levels[li]
        return int(lv.op[local]), int(lv.left[local]), int(lv.right[local])

    def all_cms(self) -> np.ndarray:
        """Every stored CM, in global id order, shape (total, T)."""
        return np.concatenate([lv.cms for lv in self.levels], axis=0)

    def pack_rows(self, rows: np.ndarray) -> np.ndarray:
        """View CM rows as (n, key_words) uint64 for hashing/dedup."""
        rows = np.ascontiguousarray(rows)
        n = len(rows)
        row_bytes = self.trace_count * self.dtype.itemsize
        if row_bytes % 8 == 0:
            return rows.view(np.uint64).reshape(n, self.key_words)
        buf = np.zeros((n, self.key_words * 8), dtype=np.uint8)
        buf[:, :row_bytes] = rows.view(np.uint8).reshape(n, row_bytes)
        return buf.view(np.uint64)

    def keys_of(self, packed: np.ndarray) -> list:
        if self.key_words == 1:
            return packed[:, 0].tolist()
        raw = packed.tobytes()
        stride = self.key_words * 8
        return [raw[i * stride : (i + 1) * stride] for i in range(len(packed))]


def reconstruct(store: CandidateStore, gid: int) -> Formula:
    """Rebuild the witness formula from (operator, child id) provenance."""
    tag, left, right = store.entry(gid)
    if tag == OP_ATOM:
        return Atom(left)
    if tag == OP_NOT:
        return Not(reconstruct(store, left))
    if tag == OP_NEXT:
        return Next(reconstruct(store, left))
    if tag == OP_FUTURE:
        return Future(reconstruct(store, left))
    node = {OP_AND: And, OP_UNTIL: Until, OP_OR: Or}[tag]
    return node(reconstruct(store, left), reconstruct(store, right))


def _first_occurrence_indices(packed: np.ndarray) -> np.ndarray:
    """Row indices of first occurrences, ascending (stable sorts keep ties ordered)."""
    n, k = packed.shape
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if k == 1:
        col = packed[:, 0]
        order = np.argsort(col, kind="stable")
        srt = col[order]
        new = np.empty(n, dtype=bool)
        new[0] = True
        np.not_equal(srt[1:], srt[:-1], out=new[1:])
    else:
        order = np.lexsort(tuple(packed[:, j] for j in reversed(range(k))))
        srt = packed[order]
        new = np.empty(n, dtype=bool)
        new[0] = True
        new[1:] = (srt[1:] != srt[:-1]).any(axis=1)
    first = order[new]
    first.sort()
    return first


@dataclass
class _Chunk:
    raw_count: int
    rows: np.ndarray  # kept candidate CMs, chunk-deduplicated, insertion order
    keys: list
    left: np.ndarray
    right: np.ndarray
    tag: int
    sep_kept_pos: int | None  # index into rows of the first separator, if any


def _tasks_for_level(store: CandidateStore, cost: int, ops: tuple[str, ...], batch: int):
    """Deterministic chunk schedule for one cost level."""
    if cost == 1:
        yield ("atoms",)
        return
    prev = store.level(cost - 1)
    for name, tag in _UNARY_TAGS:
        if name not in ops or prev.n == 0:
            continue
        for i0 in range(0, prev.n, batch):
            yield ("unary", tag, cost - 1, i0, min(i0 + batch, prev.n))
    for name, tag in _BINARY_TAGS:
        if name not in ops:
            continue
        commutative = tag in _COMMUTATIVE
        for c1 in range(1, cost - 1):
            c2 = cost - 1 - c1
            if commutative and c1 > c2:
                break
            na, nb = store.level(c1).n, store.level(c2).n
            if na == 0 or nb == 0:
                continue
            if commutative and c1 == c2:
                # triangle (i <= j); chunk rows so each chunk has <= batch pairs,
                # splitting the j range only for rows too wide to fit one chunk
                # (order within a single row stays j-ascending)
                i0 = 0
                while i0 < na:
                    if na - i0 > batch:
                        for j0 in range(i0, na, batch):
                            yield ("trij", tag, c1, i0, j0, min(j0 + batch, na))
                        i0 += 1
                        continue
                    pairs, i1 = 0, i0
                    while i1 < na and pairs + (na - i1) <= batch:
                        pairs += na - i1
                        i1 += 1
                    yield ("tri", tag, c1, i0, i1)
                    i0 = i1
            else:
                rows = batch // nb
                if rows >= 1:
                    for i0 in range(0, na, rows):
                        yield ("rect", tag, c1, i0, min(i0 + rows, na), c2, 0, nb)
                else:
                    for i0 in range(na):
                        for j0 in range(0, nb, batch):
                            yield ("rect", tag, c1, i0, i0 + 1, c2, j0, min(j0 + batch, nb))


def _build_chunk(store: CandidateStore, task, exhaustive: bool) -> _Chunk:
    layout = store.layout
    one = store.dtype.type(1)
    kind = task[0]

    if kind == "atoms":
        cand = store.atoms
        tag = OP_ATOM
        left_of = lambda k: k.astype(np.int64)
        right_of = lambda k: np.full(len(k), -1, dtype=np.int64)
    elif kind == "unary":
        _, tag, c, i0, i1 = task
        lv = store.level(c)
        src = lv.cms[i0:i1]
        if tag == OP_NOT:
            cand = kernels.op_not(src, layout)
        elif tag == OP_NEXT:
            cand = kernels.op_next(src, layout)
        else:
            cand = kernels.op_future(src, layout)
        base = lv.base + i0
        left_of = lambda k: base + k.astype(np.int64)
        right_of = lambda k: np.full(len(k), -1, dtype=np.int64)
    elif kind == "rect":
        _, tag, c1, i0, i1, c2, j0, j1 = task
        la, lb = store.level(c1), store.level(c2)
        a, b = la.cms[i0:i1], lb.cms[j0:j1]
        nb = j1 - j0
        if tag == OP_UNTIL:
            arep = np.repeat(a, nb, axis=0)
            btil = np.tile(b, (len(a), 1))
            cand = kernels.op_until(arep, btil, layout)
        elif tag == OP_AND:
            cand = (a[:, None, :] & b[None, :, :]).reshape(-1, store.trace_count)
        else:
            cand = (a[:, None, :] | b[None, :, :]).reshape(-1, store.trace_count)
        base_a, base_b = la.base + i0, lb.base + j0
        left_of = lambda k: base_a + k.astype(np.int64) // nb
        right_of = lambda k: base_b + k.astype(np.int64) % nb
    elif kind == "tri":  # same-cost commutative pairs with i <= j
        _, tag, c, i0, i1 = task
        lv = store.level(c)
        cms, n = lv.cms, lv.n
        lens = n - np.arange(i0, i1)
        ii = np.repeat(np.arange(i0, i1), lens)
        starts = np.cumsum(lens) - lens
        jj = np.arange(lens.sum()) - np.repeat(starts, lens) + ii
        cand = (cms[ii] & cms[jj]) if tag == OP_AND else (cms[ii] | cms[jj])
        base = lv.base
        left_of = lambda k: base + ii[k]
        right_of = lambda k: base + jj[k]
    else:  # trij: one triangle row, split over j
        _, tag, c, i, j0, j1 = task
        lv = store.level(c)
        row, b = lv.cms[i : i + 1], lv.cms[j0:j1]
        cand = (row & b) if tag == OP_AND else (row | b)
        base = lv.base
        left_of = lambda k: np.full(len(k), base + i, dtype=np.int64)
        right_of = lambda k: base + j0 + k.astype(np.int64)

    raw_count = len(cand)
    sep_flags = ((cand & one) == layout.target).all(axis=1)
    sep_raw = int(sep_flags.argmax()) if sep_flags.any() else None

    kept = _first_occurrence_indices(store.pack_rows(cand))
    if sep_raw is not None and not exhaustive:
        kept = kept[kept <= sep_raw]
    sep_kept_pos = None
    if sep_raw is not None:
        sep_kept_pos = int(np.searchsorted(kept, sep_raw))

    rows = cand[kept]
    packed = store.pack_rows(rows)
    return _Chunk(
        raw_count=raw_count,
        rows=rows,
        keys=store.keys_of(packed),
        left=left_of(kept),
        right=right_of(kept),
        tag=tag,
        sep_kept_pos=sep_kept_pos,
    )


def _ordered_results(executor, fn, tasks, window: int):
    pending = deque()
    for task in tasks:
        pending.append(executor.submit(fn, task))
        while len(pending) > window:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


class _BudgetExceeded(Exception):
    pass


def expand_level(
    store: CandidateStore,
    cost: int,
    ops: tuple[str, ...] = DEFAULT_OPERATORS,
    config: EngineConfig | None = None,
    stats: RunStats | None = None,
    deadline: float | None = None,
    executor: ThreadPoolExecutor | None = None,
) -> tuple[int, int | None]:
    """Build all cost-``cost`` candidates; returns (new entries, separator id).

    Requires the store to be complete for all lower costs.  With
    ``config.exhaustive`` the whole level is built even after a separator.
    """
    config = config or EngineConfig()
    stats = stats or RunStats()
    ops = normalize_operators(ops)
    exhaustive = config.exhaustive
    tasks = _tasks_for_level(store, cost, ops, config.batch_size)
    build = lambda task: _build_chunk(store, task, exhaustive)
    if executor is not None:
        window = 2 * getattr(executor, "_max_workers", 2)
        chunks = _ordered_results(executor, build, tasks, window=window)
    else:
        chunks = map(build, tasks)

    base = store.total
    acc_rows, acc_op, acc_left, acc_right = [], [], [], []
    n_new = 0
    sep_gid = None
    mem_limit = config.memory_budget_mb * (1 << 20)

    def flush():
        if acc_rows:
            cms = np.concatenate(acc_rows, axis=0)
        else:
            cms = np.empty((0, store.trace_count), dtype=store.dtype)
        store.levels.append(
            _Level(
                cms=cms,
                op=np.array(acc_op, dtype=np.uint8),
                left=np.array(acc_left, dtype=np.int64),
                right=np.array(acc_right, dtype=np.int64),
                base=base,
            )
        )

    try:
        for chunk in chunks:
            if deadline is not None and time.perf_counter() > deadline:
                raise _BudgetExceeded("time budget exhausted")
            stats.constructed += chunk.raw_count
            fresh = np.zeros(len(chunk.keys), dtype=bool)
            seen = store.seen
            for i, key in enumerate(chunk.keys):
                if key not in seen:
                    seen.add(key)
                    fresh[i] = True
            if (
                chunk.sep_kept_pos is not None
                and sep_gid is None
                and fresh[chunk.sep_kept_pos]
            ):
                # a non-fresh separator CM only occurs in exhaustive runs,
                # re-deriving one already recorded at a lower cost
                n_before = n_new + int(fresh[: chunk.sep_kept_pos + 1].sum())
                sep_gid = base + n_before - 1
            sel = np.flatnonzero(fresh)
            if len(sel):
                rows = chunk.rows[sel]
                acc_rows.append(rows)
                acc_op.extend([chunk.tag] * len(sel))
                acc_left.extend(chunk.left[sel].tolist())
                acc_right.extend(chunk.right[sel].tolist())
                n_new += len(sel)
                store.approx_bytes += rows.nbytes + len(sel) * (store.key_words * 8 + 80)
                if store.approx_bytes > mem_limit:
                    raise _BudgetExceeded("memory budget exhausted")
            if sep_gid is not None and not exhaustive:
                break
    finally:
        flush()
        stats.unique = store.total

    return n_new, sep_gid


def synthesize(spec: Specification, config: EngineConfig = EngineConfig()) -> SynthesisResult:
    """Find a minimum-cost separating formula by level-wise enumeration.

    Costs are processed in strictly increasing order and every new CM is
    checked on construction, so the first hit is minimal over the configured
    operator set.  Budget exhaustion is an outcome, not an error.
    """
    validate_feasible(spec)
    ops = normalize_operators(config.operators)
    store = CandidateStore(spec)
    stats = RunStats()
    t0 = time.perf_counter()
    deadline = t0 + config.time_budget_s
    threads = config.threads if config.threads is not None else (os.cpu_count() or 1)

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    found_gid = None
    found_cost = None
    failure = None
    try:
        for cost in range(1, config.max_cost + 1):
            stats.max_cost_reached = cost
            try:
                _, sep_gid = expand_level(
                    store, cost, ops, config=config, stats=stats, deadline=deadline, executor=executor
                )
            except _BudgetExceeded as e:
                failure = str(e)
                break
            if sep_gid is not None and found_gid is None:
                found_gid, found_cost = sep_gid, cost
                if not config.exhaustive:
                    break
    finally:
        if executor is not None:
            executor.shutdown(wait=False, cancel_futures=True)

    stats.elapsed_s = time.perf_counter() - t0
    if found_gid is None:
        return SynthesisResult(
            formula=None,
            cost=None,
            minimal=False,
            outcome=OUTCOME_EXHAUSTED,
            stats=stats,
            failure=failure,
        )
    formula = reconstruct(store, found_gid)
    if not oracle.separates_by_sat(spec, formula):
        raise RuntimeError("internal error: synthesized formula fails the reference semantics")
    return SynthesisResult(
        formula=formula, cost=found_cost, minimal=True, outcome=OUTCOME_FOUND, stats=stats
    )
