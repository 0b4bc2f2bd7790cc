"""Oblivious double-ended priority queue.

Elements live in sorted runs arranged as a binary-counter ladder (run ``k``
holds at most ``2**k`` items, plus one top run sized to the capacity).  Each
run keeps an ascending copy (minimum on top) and a descending copy (maximum
on top) of the same sorted sequence, and secret counters for how many items
each end has handed out.

A push merges ``x`` with the occupied low runs into the first free one.
``pop_min`` peeks the minimum of every run, picks the smallest, and pops every
run with the condition bit set only for the winner.  ``pop_max`` mirrors it.
"""
from __future__ import annotations

from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from .core import EMPTY, CellArray, Meter
from .fifo import low_levels_for
from .lifo import LifoQueue, trailing_ones

__all__ = ["PrioItem", "DoubleEndedPrioQueue", "merge_sorted"]


class PrioItem(NamedTuple):
    priority: int
    payload: Any = None


def _prio(x: Any) -> Any:
    return EMPTY if x is EMPTY else x.priority


def item_le(m: Meter, x: Any, y: Any) -> bool:
    """Priority order with EMPTY after everything.  1 C-Op."""
    return m.le(_prio(x), _prio(y))


def below(m: Meter, x: Any, y: Any) -> bool:
    """``x`` strictly before ``y`` in ascending order, EMPTY last.  1 C-Op."""
    return not item_le(m, y, x)


def above(m: Meter, x: Any, y: Any) -> bool:
    """``x`` strictly above ``y`` in priority, EMPTY below everything.  1 C-Op."""
    m.c_ops += 1
    if x is EMPTY:
        return False
    if y is EMPTY:
        return True
    return x.priority > y.priority


class _MergeStacks:
    """Reusable pairs of LIFOs keyed by capacity, allocated on first use."""

    def __init__(self, meter: Meter) -> None:
        self.meter = meter
        self.pool: Dict[Tuple[int, int], LifoQueue] = {}

    def get(self, n: int, slot: int) -> LifoQueue:
        key = (n, slot)
        st = self.pool.get(key)
        if st is None:
            st = self.pool[key] = LifoQueue.with_capacity(n, self.meter)
        return st


def merge_sorted(m: Meter, stacks: _MergeStacks, a: CellArray, la: int,
                 b: CellArray, lb: int, out: CellArray, le=item_le) -> None:
    """Merge ascending ``a[:la]`` and ``b[:lb]`` into ``out[:la+lb]``.

    EMPTY entries must sit at the tails.  The access pattern depends on
    ``la`` and ``lb`` only.
    """
    sa = stacks.get(la, 0)
    sb = stacks.get(lb, 1)
    for t in range(la - 1, -1, -1):
        sa.push(a.read(t))
    for t in range(lb - 1, -1, -1):
        sb.push(b.read(t))
    for k in range(la + lb):
        ha = sa.top()
        hb = sb.top()
        take_a = le(m, ha, hb)
        out.write(k, m.select(take_a, hb, ha))
        sa.pop(take_a)
        sb.pop(not take_a)


class SortedRun:
    __slots__ = ("bound", "asc", "desc", "size", "taken_min", "taken_max")

    def __init__(self, bound: int, meter: Meter) -> None:
        self.bound = bound
        self.asc = LifoQueue.with_capacity(bound, meter)
        self.desc = LifoQueue.with_capacity(bound, meter)
        self.size = 0
        self.taken_min = 0
        self.taken_max = 0

    def live(self, m: Meter) -> Any:
        return m.sub(m.sub(self.size, self.taken_min), self.taken_max)

    def extract(self, m: Meter, dst: CellArray) -> None:
        """Write the live items ascending into ``dst[:bound]``, EMPTY-padded."""
        live = self.live(m)
        for t in range(self.bound):
            v = self.asc.pop(1)
            keep = not m.le(live, t)
            dst.write(t, m.select(keep, EMPTY, v))
        self.desc.clear()
        self.size = self.taken_min = self.taken_max = 0

    def fill(self, src: CellArray, n: int, size: Any) -> None:
        for t in range(n - 1, -1, -1):
            self.asc.push(src.read(t))
        for t in range(n):
            self.desc.push(src.read(t))
        self.size = size

    def contents(self) -> List[Any]:
        items = self.asc.contents()
        return items[:self.size - self.taken_min - self.taken_max]


class DoubleEndedPrioQueue:
    def __init__(self, capacity: int, meter: Optional[Meter] = None) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.meter = meter if meter is not None else Meter()
        mk = self.meter
        self.capacity = capacity
        self.m = low_levels_for(capacity)
        self.runs = [SortedRun(1 << k, mk) for k in range(self.m)]
        self.top_run = SortedRun(capacity, mk)
        width = capacity + (1 << self.m)
        self.acc = CellArray(mk, width)
        self.seg = CellArray(mk, width)
        self.out = CellArray(mk, width)
        self.stacks = _MergeStacks(mk)
        self.n_pushes = 0

    def _all_runs(self) -> List[SortedRun]:
        return self.runs + [self.top_run]

    def push(self, item: Any) -> None:
        m = self.meter
        k = trailing_ones(self.n_pushes)
        to_top = k >= self.m
        if to_top:
            k = self.m
        sources = self.runs[:k] + ([self.top_run] if to_top else [])
        self.acc.write(0, item)
        size = m.add(0, not m.is_empty(item))
        length = 1
        for run in sources:
            size = m.add(size, run.live(m))
            run.extract(m, self.seg)
            merge_sorted(m, self.stacks, self.acc, length, self.seg, run.bound, self.out)
            length += run.bound
            self.acc, self.out = self.out, self.acc
        dst = self.top_run if to_top else self.runs[k]
        dst.fill(self.acc, length, size)
        self.n_pushes = 0 if to_top else self.n_pushes + 1

    def _pop(self, do_pop: Any, lowest: bool) -> Any:
        m = self.meter
        runs = self._all_runs()
        best = EMPTY
        winner = -1
        for r, run in enumerate(runs):
            stack = run.asc if lowest else run.desc
            has = not m.le(run.live(m), 0)
            cand = m.select(has, EMPTY, stack.top())
            # Strict comparison keeps the lowest index among ties.
            better = below(m, cand, best) if lowest else above(m, cand, best)
            best = m.select(better, best, cand)
            winner = m.select(better, winner, r)
        result = EMPTY
        for r, run in enumerate(runs):
            b = m.and_(do_pop, m.eq(winner, r))
            if lowest:
                v = run.asc.pop(b)
                run.taken_min = m.add(run.taken_min, b)
            else:
                v = run.desc.pop(b)
                run.taken_max = m.add(run.taken_max, b)
            result = m.select(b, result, v)
        return result

    def pop_min(self, do_pop: Any = 1) -> Any:
        return self._pop(do_pop, lowest=True)

    def pop_max(self, do_pop: Any = 1) -> Any:
        return self._pop(do_pop, lowest=False)

    def contents(self) -> List[Any]:
        """All stored items in ascending priority.  Untraced."""
        out: List[Any] = []
        for run in self._all_runs():
            out.extend(run.contents())
        return sorted(out, key=lambda it: it.priority)

    def __len__(self) -> int:
        return sum(len(run.contents()) for run in self._all_runs())
