"""Oblivious FIFO queues.

:class:`FifoQueue` keeps a stack of LIFO levels in binary-counter fashion:
level ``k`` holds at most ``2**k`` elements and the newest elements sit in
the lowest levels.  Each level stores its elements oldest-on-top, so a pop
scans the levels from oldest (the top level) to newest and takes the first
hit.  Pushes merge the occupied low levels into the first free one, exactly
like incrementing a counter.  All schedules depend on public counters only.

:class:`B2BFifoQueue` joins a push-side LIFO and a pop-side
:class:`PopperQueue` through one shared part.  It is faster but only
guarantees a real element on pop once the queue is at least half full.
"""
from __future__ import annotations

from typing import Any, List, Optional

from .core import EMPTY, CellArray, Meter
from .lifo import LifoQueue, PopperQueue, levels_for, trailing_ones

__all__ = ["FifoQueue", "B2BFifoQueue", "low_levels_for"]


def low_levels_for(capacity: int) -> int:
    """Number of binary-counter levels below the top level."""
    return max(1, capacity.bit_length() - 2)


class FifoQueue:
    def __init__(self, capacity: int, meter: Optional[Meter] = None) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.meter = meter if meter is not None else Meter()
        self.capacity = capacity
        self.m = low_levels_for(capacity)
        self.levels = [LifoQueue(levels_for(1 << k), self.meter) for k in range(self.m)]
        self.top_level = LifoQueue.with_capacity(capacity, self.meter)
        self.scratch = CellArray(self.meter, capacity + (1 << self.m))
        self.n_pushes = 0

    def push(self, x: Any) -> None:
        k = trailing_ones(self.n_pushes)
        pos = 0
        if k >= self.m:
            for _ in range(self.capacity):
                self.scratch.write(pos, self.top_level.pop(1))
                pos += 1
            k = self.m
        for j in range(k - 1, -1, -1):
            lvl = self.levels[j]
            for _ in range(1 << j):
                self.scratch.write(pos, lvl.pop(1))
                pos += 1
        self.scratch.write(pos, x)
        pos += 1
        dst = self.top_level if k == self.m else self.levels[k]
        # Newest first so the oldest element ends up on top.
        for t in range(pos - 1, -1, -1):
            dst.push(self.scratch.read(t))
        self.n_pushes = 0 if k == self.m else self.n_pushes + 1

    def pop(self, do_pop: Any = 1) -> Any:
        m = self.meter
        found = False
        result = EMPTY
        for lvl in [self.top_level] + self.levels[::-1]:
            b = m.and_(do_pop, not found)
            v = lvl.pop(b)
            hit = not m.is_empty(v)
            found = m.or_(found, hit)
            result = m.select(hit, result, v)
        return result

    def contents(self) -> List[Any]:
        """Stored elements, oldest first.  Untraced."""
        out: List[Any] = []
        for lvl in [self.top_level] + self.levels[::-1]:
            out.extend(lvl.contents())
        return out

    def __len__(self) -> int:
        return len(self.contents())


class B2BFifoQueue:
    """Back-to-back FIFO: push side ``q=4`` LIFO, pop side ``q=2`` PopperQueue.

    The last part of the pop side's largest subarray is the crossing slot.
    Whenever the push side's restructuring schedule wraps around, the oldest
    full part of its largest subarray is reversed into that slot, and the pop
    side's refill chain pulls it forward.
    """

    def __init__(self, s: int, meter: Optional[Meter] = None) -> None:
        if s < 1:
            raise ValueError("need at least one subarray")
        self.s = s
        self.meter = meter if meter is not None else Meter()
        self.push_side = LifoQueue(s, self.meter)
        self.pop_side = PopperQueue(s, self.meter)
        self.capacity = self.push_side.capacity

    @classmethod
    def with_capacity(cls, n: int, meter: Optional[Meter] = None) -> "B2BFifoQueue":
        return cls(levels_for(max(n, 1)), meter)

    def _cross(self) -> None:
        m = self.meter
        L, P = self.push_side, self.pop_side
        i = self.s - 1
        n = 1 << i
        slot_free = P._part_empty(i, 1)
        full = [not L._part_empty(i, j) for j in range(L.q)] + [False]
        slot = P.part_start(i, 1)
        for j in range(L.q):
            d = m.and_(m.and_(slot_free, full[j]), not full[j + 1])
            P.cells.move(d, slot, L.part_start(i, j), n, src_arr=L.cells, reverse=True)

    def _chain(self) -> None:
        P = self.pop_side
        for i in range(self.s - 2, -1, -1):
            P.refill_two_parts(i)
        P.shift_parts_left(0)

    def push(self, x: Any) -> None:
        self.push_side.push(x)
        if self.s < 2 or self.push_side.n_pu == 0:
            self._cross()
            self._chain()

    def pop(self, do_pop: Any = 1) -> Any:
        m = self.meter
        P = self.pop_side
        top = P.cells.read(0)
        result, rest = m.cmp_ex_er(do_pop, EMPTY, top)
        P.cells.write(0, rest)
        if self.s < 2 or P.n_po == P.period - 1:
            self._cross()
        if self.s > 1:
            P.n_po = P.move_between_sas(P.n_po, P.refill_two_parts)
        P.shift_parts_left(0)
        return result

    def contents(self) -> List[Any]:
        """Stored elements, oldest first.  Untraced."""
        return self.pop_side.contents() + self.push_side.contents()[::-1]

    def __len__(self) -> int:
        return len(self.push_side) + len(self.pop_side)
