"""Oblivious LIFO stack built from exponentially growing subarrays.

Subarray ``i`` holds ``q`` parts of ``2**i`` cells.  All cells live in one
:class:`CellArray`; part ``(i, j)`` starts at ``q*(2**i - 1) + j*2**i``.  With
this layout, reading the non-empty cells in index order gives the pop order.

Restructuring follows a public schedule: before every push (after every pop)
the subarrays ``min(t, s-2) .. 0`` are emptied into (refilled from) the next
subarray, where ``t`` is the number of trailing ones of the push (pop) counter.
"""
from __future__ import annotations

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .core import EMPTY, CellArray, Meter, OpCounters

__all__ = ["LifoQueue", "PopperQueue", "capacity_for", "levels_for", "trailing_ones"]


def trailing_ones(n: int) -> int:
    t = 0
    while n & 1:
        n >>= 1
        t += 1
    return t


def capacity_for(s: int, q: int = 4) -> int:
    return q * ((1 << s) - 1)


def levels_for(n: int, q: int = 4) -> int:
    """Smallest number of subarrays whose capacity is at least ``n``."""
    s = 1
    while capacity_for(s, q) < n:
        s += 1
    return s


class LifoQueue:
    q = 4

    def __init__(self, s: int, meter: Optional[Meter] = None, debug: bool = False) -> None:
        if s < 1:
            raise ValueError("need at least one subarray")
        self.s = s
        self.meter = meter if meter is not None else Meter()
        self.cells = CellArray(self.meter, capacity_for(s, self.q))
        self.period = 1 << max(0, s - 2)
        self.n_pu = 0
        self.n_po = 0
        # Shadow stack used only to catch misuse in debug runs.
        self._shadow: Optional[List[Any]] = [] if debug else None
        self._starts = [[self.part_start(i, j) for j in range(self.q)] for i in range(s)]
        self._tops = [min(trailing_ones(k), s - 2) for k in range(self.period)]
        self._push_costs: Optional[List[Tuple[int, int, int, int]]] = None
        self._pop_costs: Optional[List[Tuple[int, int, int, int]]] = None

    @classmethod
    def with_capacity(cls, n: int, meter: Optional[Meter] = None, debug: bool = False) -> "LifoQueue":
        return cls(levels_for(max(n, 1), cls.q), meter=meter, debug=debug)

    @property
    def capacity(self) -> int:
        return len(self.cells)

    def part_start(self, i: int, j: int) -> int:
        return self.q * ((1 << i) - 1) + (j << i)

    def _part_empty(self, i: int, j: int) -> bool:
        return self.meter.is_empty(self.cells.read(self._starts[i][j]))

    def _move_part(self, b: bool, i_dst: int, j_dst: int, i_src: int, j_src: int) -> None:
        self.cells.move(b, self._starts[i_dst][j_dst], self._starts[i_src][j_src], 1 << i_src)

    # -- restructuring --------------------------------------------------
    def shift_parts_right(self, i: int, do_op: Any) -> None:
        """Slide occupied parts of subarray ``i`` one step towards its end, if ``do_op``
        and part 0 is occupied.  Cascades: ``[a|b|-|c]`` becomes ``[-|a|b|c]``."""
        m = self.meter
        gate = m.and_(do_op, not self._part_empty(i, 0))
        for j in range(self.q - 1, 0, -1):
            d = m.and_(gate, self._part_empty(i, j))
            self._move_part(d, i, j, i, j - 1)

    def shift_parts_left(self, i: int) -> None:
        """Compact subarray ``i`` towards part 0, one part per empty slot."""
        for j in range(self.q - 1):
            d = self._part_empty(i, j)
            self._move_part(d, i, j, i, j + 1)

    def empty_two_parts(self, i: int) -> None:
        """If subarray ``i`` is full, move its last two parts into part 0 of ``i+1``."""
        m = self.meter
        q = self.q
        checks = [not self._part_empty(i, j) for j in range(q)]
        full = checks[0]
        for c in checks[1:]:
            full = m.and_(full, c)
        self.shift_parts_right(i + 1, full)
        d = m.and_(full, self._part_empty(i + 1, 0))
        dst = self._starts[i + 1][0]
        n = 1 << i
        self.cells.move(d, dst, self._starts[i][q - 2], n)
        self.cells.move(d, dst + n, self._starts[i][q - 1], n)

    def refill_two_parts(self, i: int) -> None:
        """If the back half of subarray ``i`` is empty, split part 0 of ``i+1`` into it."""
        m = self.meter
        q = self.q
        self.shift_parts_left(i + 1)
        first = q // 2 - 1
        checks = [self._part_empty(i, j) for j in range(first, q)]
        need = checks[0]
        for c in checks[1:]:
            need = m.and_(need, c)
        d = m.and_(need, not self._part_empty(i + 1, 0))
        src = self._starts[i + 1][0]
        n = 1 << i
        self.cells.move(d, self._starts[i][first], src, n)
        self.cells.move(d, self._starts[i][first + 1], src + n, n)

    def move_between_sas(self, n_ops: int, op: Callable[[int], None]) -> int:
        top = min(trailing_ones(n_ops), self.s - 2)
        for i in range(top, -1, -1):
            op(i)
        return (n_ops + 1) % self.period

    # -- public operations ----------------------------------------------
    def push(self, x: Any) -> None:
        if self.meter.trace is None and self._shadow is None:
            self._fast_push(x)
        else:
            self._traced_push(x)

    def pop(self, do_pop: Any = 1) -> Any:
        if self.meter.trace is None and self._shadow is None:
            return self._fast_pop(do_pop)
        return self._traced_pop(do_pop)

    def _traced_push(self, x: Any) -> None:
        m = self.meter
        sh = self._shadow
        if sh is not None and x is not EMPTY:
            if len(sh) >= self.capacity:
                raise OverflowError("push into a full queue")
            sh.append(x)
        if self.s > 1:
            self.n_pu = self.move_between_sas(self.n_pu, self.empty_two_parts)
        real = not m.is_empty(x)
        self.shift_parts_right(0, real)
        top = self.cells.read(0)
        if sh is not None and real and top is not EMPTY:
            raise AssertionError("top cell still occupied after shift")
        self.cells.write(0, m.select(real, top, x))

    def _traced_pop(self, do_pop: Any) -> Any:
        m = self.meter
        top = self.cells.read(0)
        result, rest = m.cmp_ex_er(do_pop, EMPTY, top)
        self.cells.write(0, rest)
        if self._shadow is not None and result is not EMPTY:
            expected = self._shadow.pop()
            if expected != result:
                raise AssertionError(f"popped {result!r}, expected {expected!r}")
        if self.s > 1:
            self.n_po = self.move_between_sas(self.n_po, self.refill_two_parts)
        self.shift_parts_left(0)
        return result

    # -- untraced fast path ----------------------------------------------
    # Same cell updates as the traced path.  Counter charges do not depend on
    # the data, so they are looked up per schedule step instead of tallied.

    def _costs(self, kind: str) -> List[Tuple[int, int, int, int]]:
        """Per-counter-value charges for ``kind``, built on first use."""
        attr = "_push_costs" if kind == "push" else "_pop_costs"
        costs = getattr(self, attr)
        if costs is None:
            table = _op_costs(type(self), self.s)
            costs = []
            for n_ops in range(self.period):
                top = min(trailing_ones(n_ops), self.s - 2) if self.s > 1 else -1
                d = table[kind, top]
                costs.append((d.e_ops, d.c_ops, d.reads, d.writes))
            setattr(self, attr, costs)
        return costs

    def _fast_push(self, x: Any) -> None:
        c = self.cells.cells
        n_ops = self.n_pu
        q = self.q
        starts = self._starts
        if self.s > 1:
            for i in range(self._tops[n_ops], -1, -1):
                row = starts[i]
                full = True
                for a in row:
                    if c[a] is EMPTY:
                        full = False
                        break
                if not full:
                    continue
                # Make room in part 0 of subarray i+1, then merge two parts into it.
                nxt = starts[i + 1]
                n = 2 << i
                if c[nxt[0]] is not EMPTY:
                    for j in range(q - 1, 0, -1):
                        y = nxt[j]
                        if c[y] is EMPTY:
                            z = nxt[j - 1]
                            c[y:y + n] = c[z:z + n]
                            c[z:z + n] = [EMPTY] * n
                dst = nxt[0]
                if c[dst] is EMPTY:
                    h = n >> 1
                    y = row[q - 2]
                    z = row[q - 1]
                    c[dst:dst + h] = c[y:y + h]
                    c[dst + h:dst + n] = c[z:z + h]
                    c[y:y + h] = [EMPTY] * h
                    c[z:z + h] = [EMPTY] * h
            self.n_pu = n_ops + 1 if n_ops + 1 < self.period else 0
        if x is not EMPTY:
            if c[0] is not EMPTY:
                for j in range(q - 1, 0, -1):
                    if c[j] is EMPTY:
                        c[j] = c[j - 1]
                        c[j - 1] = EMPTY
            c[0] = x
        costs = self._push_costs if self._push_costs is not None else self._costs("push")
        m = self.meter
        m.e_ops += costs[n_ops][0]
        m.c_ops += costs[n_ops][1]
        m.reads += costs[n_ops][2]
        m.writes += costs[n_ops][3]

    def _fast_pop(self, do_pop: Any) -> Any:
        c = self.cells.cells
        result = EMPTY
        if do_pop:
            result = c[0]
            c[0] = EMPTY
        n_ops = self.n_po
        q = self.q
        starts = self._starts
        if self.s > 1:
            first = q // 2 - 1
            for i in range(self._tops[n_ops], -1, -1):
                # Compact subarray i+1, then split its part 0 into i if needed.
                row = starts[i + 1]
                n = 2 << i
                for j in range(q - 1):
                    x = row[j]
                    if c[x] is EMPTY:
                        y = row[j + 1]
                        if c[y] is not EMPTY:
                            c[x:x + n] = c[y:y + n]
                            c[y:y + n] = [EMPTY] * n
                src = row[0]
                if c[src] is EMPTY:
                    continue
                low = starts[i]
                for j in range(first, q):
                    if c[low[j]] is not EMPTY:
                        break
                else:
                    h = n >> 1
                    x = low[first]
                    y = low[first + 1]
                    c[x:x + h] = c[src:src + h]
                    c[y:y + h] = c[src + h:src + n]
                    c[src:src + n] = [EMPTY] * n
            self.n_po = n_ops + 1 if n_ops + 1 < self.period else 0
        for j in range(q - 1):
            if c[j] is EMPTY and c[j + 1] is not EMPTY:
                c[j] = c[j + 1]
                c[j + 1] = EMPTY
        costs = self._pop_costs if self._pop_costs is not None else self._costs("pop")
        m = self.meter
        m.e_ops += costs[n_ops][0]
        m.c_ops += costs[n_ops][1]
        m.reads += costs[n_ops][2]
        m.writes += costs[n_ops][3]
        return result

    def peek(self) -> Any:
        x = self.pop(1)
        self.push(x)
        return x

    def top(self) -> Any:
        """Read the top cell without popping (one traced read)."""
        return self.cells.read(0)

    # -- inspection -----------------------------------------------------
    def contents(self) -> List[Any]:
        """Stored elements, next-to-pop first.  Untraced."""
        return [x for x in self.cells.cells if x is not EMPTY]

    def __len__(self) -> int:
        return sum(1 for x in self.cells.cells if x is not EMPTY)

    def parts(self) -> List[List[List[Any]]]:
        c = self.cells.cells
        out = []
        for i in range(self.s):
            n = 1 << i
            out.append([c[self.part_start(i, j):self.part_start(i, j) + n] for j in range(self.q)])
        return out

    def two_state_ok(self) -> bool:
        for sa in self.parts():
            for part in sa:
                empties = sum(1 for x in part if x is EMPTY)
                if empties not in (0, len(part)):
                    return False
        return True

    def clear(self) -> None:
        self.cells.clear()
        self.n_pu = self.n_po = 0
        if self._shadow is not None:
            self._shadow.clear()

    def to_record(self) -> Tuple[int, int, int, int, Tuple[Any, ...]]:
        return (self.s, self.q, self.n_pu, self.n_po, tuple(self.cells.cells))

    @classmethod
    def from_record(cls, rec: Sequence[Any], meter: Optional[Meter] = None) -> "LifoQueue":
        s, q, n_pu, n_po, cells = rec
        if q != cls.q:
            raise ValueError(f"record has q={q}, expected {cls.q}")
        obj = cls(s, meter=meter)
        if len(cells) != obj.capacity:
            raise ValueError("cell count does not match s")
        obj.cells.cells[:] = list(cells)
        obj.n_pu, obj.n_po = n_pu, n_po
        return obj


_COST_CACHE: Dict[Tuple[type, int], Dict[Tuple[str, int], OpCounters]] = {}


def _op_costs(cls: type, s: int) -> Dict[Tuple[str, int], OpCounters]:
    """Counter charges of one push/pop per schedule step, read off the traced path."""
    key = (cls, s)
    table = _COST_CACHE.get(key)
    if table is None:
        table = {}
        tops = range(s - 1) if s > 1 else [-1]
        for top in tops:
            n_ops = (1 << top) - 1 if top >= 0 else 0
            for kind in ("push", "pop"):
                if kind == "push" and cls.q == 2:
                    continue
                meter = Meter(trace=True)
                probe = cls(s, meter)
                probe.n_pu = probe.n_po = n_ops
                if kind == "push":
                    probe._traced_push(EMPTY)
                else:
                    probe._traced_pop(0)
                table[kind, top] = meter.counters()
        _COST_CACHE[key] = table
    return table


class PopperQueue(LifoQueue):
    """Pop-only variant with two parts per subarray.

    It is filled in bulk by :meth:`load_sorted` and then only popped.  Pushing
    is not supported: with two parts the push schedule cannot keep a free
    slot at the top.
    """

    q = 2

    def push(self, x: Any) -> None:
        raise TypeError("PopperQueue is filled by load_sorted, not push")

    _traced_push = push

    def load_sorted(self, values: Sequence[Any]) -> None:
        """Place ``values`` so that they pop front to back.

        The length must be a power of two ``2**x`` and the queue needs at least
        ``x + 1`` subarrays.  Positions depend on the length only.
        """
        n = len(values)
        if n == 0 or n & (n - 1):
            raise ValueError("load length must be a power of two")
        x = n.bit_length() - 1
        self.n_po = 0
        if self.s < x + 1:
            raise ValueError(f"{n} values need at least {x + 1} subarrays")
        if n == 1:
            self.cells.write(0, values[0])
            return
        # Subarray 0 full, then part 0 of subarrays 1 .. x-1.
        self.cells.write(0, values[0])
        self.cells.write(1, values[1])
        k = 2
        for i in range(1, x):
            base = self.part_start(i, 0)
            for t in range(1 << i):
                self.cells.write(base + t, values[k])
                k += 1
