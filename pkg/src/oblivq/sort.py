"""Oblivious mergesort and Monte-Carlo quicksort.

Mergesort merges runs held in :class:`PopperQueue` objects, popping the
smaller head each step.  Quicksort splits around a sampled pivot into two
fixed-width LIFOs, sorts one side ascending and the other descending, and
glues them end to end.  Every loop bound depends on public lengths only.

Inside a sort, words are wrapped so that three kinds of filler order after
all real data: a blank input cell (``HOLE``), length padding (``PAD``) and
the EMPTY a drained queue returns.  Sorted output keeps blanks at the tail.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, List, NamedTuple, Optional, Sequence

from .core import EMPTY, CellArray, Meter
from .lifo import LifoQueue, PopperQueue

__all__ = [
    "o_merge",
    "sort_cells",
    "o_mergesort",
    "random_pivot",
    "partition",
    "o_quicksort",
    "QuicksortResult",
    "PartitionResult",
    "mergesort_bounds",
]


class _Marker:
    __slots__ = ("name", "rank")

    def __init__(self, name: str, rank: int) -> None:
        self.name = name
        self.rank = rank

    def __repr__(self) -> str:
        return self.name


HOLE = _Marker("HOLE", 1)
PAD = _Marker("PAD", 2)


def _rank(x: Any) -> int:
    if x is EMPTY:
        return 3
    if type(x) is _Marker:
        return x.rank
    return 0


def before(m: Meter, x: Any, y: Any, desc: bool = False) -> bool:
    """``x`` may precede ``y`` in the output order.  1 C-Op."""
    m.c_ops += 1
    rx, ry = _rank(x), _rank(y)
    if rx != ry:
        return rx < ry
    if rx:
        return True
    return x >= y if desc else x <= y


def _pow2_at_least(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def o_merge(a: PopperQueue, la: int, b: PopperQueue, lb: int,
            out: CellArray, start: int = 0, desc: bool = False) -> None:
    """Merge two loaded queues holding ``la`` and ``lb`` ordered words into
    ``out[start:start+la+lb]``.  Anything after the words in a queue (padding)
    must order after them."""
    m = out.meter
    ele_a = a.pop(1)
    ele_b = b.pop(1)
    for k in range(la + lb - 1):
        take_a = before(m, ele_a, ele_b, desc)
        out.write(start + k, m.select(take_a, ele_b, ele_a))
        ele_a = m.select(take_a, ele_a, a.pop(take_a))
        ele_b = m.select(take_a, b.pop(not take_a), ele_b)
    # The last step compares afresh: the bit from the loop refers to a head
    # that has since been replaced.
    take_a = before(m, ele_a, ele_b, desc)
    out.write(start + la + lb - 1, m.select(take_a, ele_b, ele_a))


def _load(src: CellArray, start: int, n: int) -> tuple:
    width = _pow2_at_least(n)
    q = PopperQueue(width.bit_length(), src.meter)
    vals = [src.read(start + t) for t in range(n)] + [PAD] * (width - n)
    q.load_sorted(vals)
    return q


def _merge_runs(src: CellArray, a0: int, la: int, b0: int, lb: int,
                dst: CellArray, desc: bool) -> None:
    m = src.meter
    if la == 1 and lb == 1:
        x = src.read(a0)
        y = src.read(b0)
        first = before(m, x, y, desc)
        dst.write(a0, m.select(first, y, x))
        dst.write(a0 + 1, m.select(first, x, y))
        return
    qa = _load(src, a0, la)
    qb = _load(src, b0, lb)
    o_merge(qa, la, qb, lb, dst, a0, desc)


def sort_cells(src: CellArray, n: int, dst: CellArray, desc: bool = False) -> None:
    """Sort ``src[:n]`` into ``dst[:n]``; EMPTY cells go last either way."""
    if n <= 0:
        raise ValueError("nothing to sort")
    m = src.meter
    cur = CellArray(m, n)
    nxt = CellArray(m, n)
    for t in range(n):
        v = src.read(t)
        cur.write(t, m.select(m.is_empty(v), v, HOLE))
    runs = [(t, 1) for t in range(n)]
    while len(runs) > 1:
        merged = []
        for r in range(0, len(runs) - 1, 2):
            (a0, la), (b0, lb) = runs[r], runs[r + 1]
            _merge_runs(cur, a0, la, b0, lb, nxt, desc)
            merged.append((a0, la + lb))
        if len(runs) % 2:
            a0, la = runs[-1]
            for t in range(a0, a0 + la):
                nxt.write(t, cur.read(t))
            merged.append(runs[-1])
        runs = merged
        cur, nxt = nxt, cur
    for t in range(n):
        v = cur.read(t)
        dst.write(t, m.select(m.eq(v, HOLE), v, EMPTY))


def o_mergesort(values: Sequence[Any], desc: bool = False, meter: Optional[Meter] = None) -> List[Any]:
    n = len(values)
    if n == 0:
        raise ValueError("cannot sort an empty array")
    m = meter if meter is not None else Meter()
    src = CellArray(m, n)
    src.cells[:] = list(values)
    dst = CellArray(m, n)
    sort_cells(src, n, dst, desc)
    return list(dst.cells)


def mergesort_bounds(n: int) -> tuple:
    """(C-Op bound, E-Op bound) for sorting ``n`` words."""
    lg = math.log2(n)
    return 85 * n * lg, n * (3 + 560 * (lg - 1) + 28 * lg * lg)


# -- quicksort ----------------------------------------------------------

def sample_size(n: int, c: float) -> int:
    return max(1, math.ceil(13 * c * math.log2(max(n, 2))))


def random_pivot(arr: CellArray, l: int, n_p: int, rng: random.Random) -> Any:
    """Median of ``n_p`` cells drawn with replacement from ``arr[:l]``.

    Blank cells sort last, so the median is taken over the real samples.
    """
    m = arr.meter
    picks = CellArray(m, n_p)
    for t in range(n_p):
        picks.write(t, arr.read(rng.randrange(l)))
    ordered = CellArray(m, n_p)
    sort_cells(picks, n_p, ordered)
    real = 0
    vals = []
    for t in range(n_p):
        v = ordered.read(t)
        vals.append(v)
        real = m.add(real, not m.is_empty(v))
    mid = m.half(real)
    pivot = EMPTY
    for t, v in enumerate(vals):
        pivot = m.select(m.eq(mid, t), pivot, v)
    return pivot


class PartitionResult(NamedTuple):
    low: CellArray
    high: CellArray
    n_low: Any
    n_high: Any
    n_pivot: Any
    overflow: Any


def partition(arr: CellArray, l: int, p: Any, width: int) -> PartitionResult:
    """Route ``arr[:l]`` into a side below ``p`` and a side above ``p``, then
    share out the copies of ``p`` so the sides stay as even as possible."""
    m = arr.meter
    low = LifoQueue.with_capacity(width, m)
    high = LifoQueue.with_capacity(width, m)
    n_low = n_high = n_pivot = 0
    overflow = False
    for t in range(l):
        x = arr.read(t)
        real = not m.is_empty(x)
        lt = not m.le(p, x)
        gt = m.and_(real, not m.le(x, p))
        lt = m.and_(real, lt)
        eq = m.and_(m.and_(real, not lt), not gt)
        room_low = m.le(m.add(n_low, 1), width)
        room_high = m.le(m.add(n_high, 1), width)
        overflow = m.or_(overflow, m.or_(m.and_(lt, not room_low), m.and_(gt, not room_high)))
        lt = m.and_(lt, room_low)
        gt = m.and_(gt, room_high)
        low.push(m.select(lt, EMPTY, x))
        high.push(m.select(gt, EMPTY, x))
        n_low = m.add(n_low, lt)
        n_high = m.add(n_high, gt)
        n_pivot = m.add(n_pivot, eq)
    remaining = n_pivot
    for _ in range(l):
        has = not m.le(remaining, 0)
        to_low = m.and_(has, not m.le(n_high, n_low))
        to_high = m.and_(has, not to_low)
        room_low = m.le(m.add(n_low, 1), width)
        room_high = m.le(m.add(n_high, 1), width)
        overflow = m.or_(overflow, m.or_(m.and_(to_low, not room_low), m.and_(to_high, not room_high)))
        to_low = m.and_(to_low, room_low)
        to_high = m.and_(to_high, room_high)
        low.push(m.select(to_low, EMPTY, p))
        high.push(m.select(to_high, EMPTY, p))
        n_low = m.add(n_low, to_low)
        n_high = m.add(n_high, to_high)
        remaining = m.sub(remaining, has)
    low_arr = CellArray(m, width)
    high_arr = CellArray(m, width)
    for t in range(width):
        low_arr.write(t, low.pop(1))
        high_arr.write(t, high.pop(1))
    return PartitionResult(low_arr, high_arr, n_low, n_high, n_pivot, overflow)


@dataclass
class QuicksortResult:
    values: List[Any]
    ok: bool
    depth: int


class _Quicksort:
    def __init__(self, n: int, c: float, rng: random.Random, meter: Meter) -> None:
        self.n = n
        self.c = c
        self.rng = rng
        self.meter = meter
        self.log_n = math.log2(max(n, 2))
        self.base = 4 * self.log_n ** 2
        self.n_p = sample_size(n, c)
        self.failed: Any = False
        self.depth = 0

    def width(self, l: int) -> int:
        eps = math.sqrt(13 * self.c * self.log_n / l)
        return min(l, math.ceil(l / 2 * (1 + eps)))

    def sort(self, arr: CellArray, l: int, asc: bool, depth: int, compact: bool) -> CellArray:
        m = self.meter
        self.depth = max(self.depth, depth)
        out = CellArray(m, l)
        w = self.width(l)
        if l < self.base or w >= l:
            sort_cells(arr, l, out, desc=not asc)
            return out
        eps = math.sqrt(13 * self.c * self.log_n / l)
        sure = max(0, math.floor(l / 2 * (1 - 2 * eps)))
        p = random_pivot(arr, l, self.n_p, self.rng)
        part = partition(arr, l, p, w)
        self.failed = m.or_(self.failed, part.overflow)
        low = self.sort(part.low, w, True, depth + 1, True)
        high = self.sort(part.high, w, False, depth + 1, True)
        # Ascending output: low side from the left, high side from the right.
        left, right = (low, high) if asc else (high, low)
        for k in range(sure):
            a = left.read(k)
            b = right.read(k)
            out.write(k, a)
            out.write(l - 1 - k, b)
            if k == sure - 1:
                short = m.or_(m.is_empty(a), m.is_empty(b))
                self.failed = m.or_(self.failed, short)
        for k in range(sure, w):
            a = left.read(k)
            cur = out.read(k)
            out.write(k, m.select(m.is_empty(a), a, cur))
            b = right.read(k)
            cur = out.read(l - 1 - k)
            out.write(l - 1 - k, m.select(m.is_empty(b), b, cur))
        if not compact:
            return out
        # Blanks sit between the two sides; push everything through a LIFO so
        # they end up at the tail.
        stack = LifoQueue.with_capacity(l, m)
        for k in range(l - 1, -1, -1):
            stack.push(out.read(k))
        packed = CellArray(m, l)
        for k in range(l):
            packed.write(k, stack.pop(1))
        return packed


def o_quicksort(values: Sequence[Any], c: float = 2, seed: int = 0, desc: bool = False,
                meter: Optional[Meter] = None) -> QuicksortResult:
    """Sort ``values``.  ``ok`` is False when some split came out too lopsided
    for the fixed side widths; the output is then unreliable and the caller
    may retry with another seed."""
    n = len(values)
    if n == 0:
        raise ValueError("cannot sort an empty array")
    m = meter if meter is not None else Meter()
    src = CellArray(m, n)
    src.cells[:] = list(values)
    qs = _Quicksort(n, c, random.Random(seed), m)
    out = qs.sort(src, n, not desc, 0, False)
    return QuicksortResult(list(out.cells), not qs.failed, qs.depth)
