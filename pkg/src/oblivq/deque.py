"""Oblivious double-ended queue.

Elements live in runs.  Each run keeps two LIFO copies of its elements: one
with the front-most element on top and one with the back-most on top, plus
secret counters for its size and for how many elements each side has already
taken.  A run's live elements are the ones neither side has taken yet.

Runs form two binary-counter ladders, one growing from the front and one from
the back.  In front-to-back order they are::

    front[0], front[1], ..., front[m-1], front_top, back_top, back[m-1], ..., back[0]

A push merges the occupied low runs of its side into the first free one.  A
pop takes from the first run, in its side's order, that still has live
elements.
"""
from __future__ import annotations

from typing import Any, List, Optional

from .core import EMPTY, CellArray, Meter
from .fifo import low_levels_for
from .lifo import LifoQueue, trailing_ones

__all__ = ["DoubleEndedQueue", "Run"]


class Run:
    __slots__ = ("bound", "front_top", "back_top", "size", "taken_front", "taken_back")

    def __init__(self, bound: int, meter: Meter) -> None:
        self.bound = bound
        self.front_top = LifoQueue.with_capacity(bound, meter)
        self.back_top = LifoQueue.with_capacity(bound, meter)
        self.size = 0
        self.taken_front = 0
        self.taken_back = 0

    def live(self, m: Meter) -> Any:
        return m.sub(m.sub(self.size, self.taken_front), self.taken_back)

    def drain(self, m: Meter, scratch: CellArray, pos: int) -> int:
        """Pop every slot of the front copy into ``scratch`` in front-to-back order,
        blanking already-taken elements.  Returns the next free scratch index."""
        live = self.live(m)
        for t in range(self.bound):
            v = self.front_top.pop(1)
            keep = not m.le(live, t)
            scratch.write(pos, m.select(keep, EMPTY, v))
            pos += 1
        self.back_top.clear()
        self.size = 0
        self.taken_front = 0
        self.taken_back = 0
        return pos

    def fill(self, m: Meter, scratch: CellArray, start: int, stop: int, size: Any) -> None:
        """Load ``scratch[start:stop]`` (front-to-back, gaps allowed)."""
        for t in range(stop - 1, start - 1, -1):
            self.front_top.push(scratch.read(t))
        for t in range(start, stop):
            self.back_top.push(scratch.read(t))
        self.size = size

    def contents(self) -> List[Any]:
        items = self.front_top.contents()
        return items[:self.size - self.taken_front - self.taken_back]


class DoubleEndedQueue:
    def __init__(self, capacity: int, meter: Optional[Meter] = None) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.meter = meter if meter is not None else Meter()
        self.capacity = capacity
        self.m = low_levels_for(capacity)
        mk = self.meter
        self.front = [Run(1 << k, mk) for k in range(self.m)]
        self.back = [Run(1 << k, mk) for k in range(self.m)]
        self.front_top = Run(capacity, mk)
        self.back_top = Run(capacity, mk)
        self.scratch = CellArray(mk, capacity + (1 << self.m))
        self.n_front = 0
        self.n_back = 0

    def _order(self) -> List[Run]:
        return self.front + [self.front_top, self.back_top] + self.back[::-1]

    def push_front(self, x: Any) -> None:
        m = self.meter
        k = trailing_ones(self.n_front)
        to_top = k >= self.m
        if to_top:
            k = self.m
        self.scratch.write(0, x)
        size = m.add(0, not m.is_empty(x))
        pos = 1
        for j in range(k):
            run = self.front[j]
            size = m.add(size, run.live(m))
            pos = run.drain(m, self.scratch, pos)
        if to_top:
            run = self.front_top
            size = m.add(size, run.live(m))
            pos = run.drain(m, self.scratch, pos)
        dst = self.front_top if to_top else self.front[k]
        dst.fill(m, self.scratch, 0, pos, size)
        self.n_front = 0 if to_top else self.n_front + 1

    def push_back(self, x: Any) -> None:
        m = self.meter
        k = trailing_ones(self.n_back)
        to_top = k >= self.m
        if to_top:
            k = self.m
        pos = 0
        size = 0
        if to_top:
            run = self.back_top
            size = m.add(size, run.live(m))
            pos = run.drain(m, self.scratch, pos)
        for j in range(k - 1, -1, -1):
            run = self.back[j]
            size = m.add(size, run.live(m))
            pos = run.drain(m, self.scratch, pos)
        self.scratch.write(pos, x)
        size = m.add(size, not m.is_empty(x))
        pos += 1
        dst = self.back_top if to_top else self.back[k]
        dst.fill(m, self.scratch, 0, pos, size)
        self.n_back = 0 if to_top else self.n_back + 1

    def pop_front(self, do_pop: Any = 1) -> Any:
        return self._pop(do_pop, self._order(), front=True)

    def pop_back(self, do_pop: Any = 1) -> Any:
        return self._pop(do_pop, self._order()[::-1], front=False)

    def _pop(self, do_pop: Any, runs: List[Run], front: bool) -> Any:
        m = self.meter
        found = False
        result = EMPTY
        for run in runs:
            has = not m.le(run.live(m), 0)
            b = m.and_(m.and_(do_pop, has), not found)
            found = m.or_(found, has)
            if front:
                v = run.front_top.pop(b)
                run.taken_front = m.add(run.taken_front, b)
            else:
                v = run.back_top.pop(b)
                run.taken_back = m.add(run.taken_back, b)
            result = m.select(b, result, v)
        return result

    def contents(self) -> List[Any]:
        """Stored elements, front to back.  Untraced."""
        out: List[Any] = []
        for run in self._order():
            out.extend(run.contents())
        return out

    def __len__(self) -> int:
        return len(self.contents())
