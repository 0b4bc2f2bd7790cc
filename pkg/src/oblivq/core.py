"""Word model, operation counting and access tracing.

Every data-dependent value flows through a :class:`Meter`.  The meter charges
E-Ops (arithmetic on secret words) and C-Ops (comparisons on secret words) and,
when tracing is on, records the cell accesses made through :class:`CellArray`.
Registers (plain Python locals) are never traced.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "EMPTY",
    "is_empty_word",
    "OpCounters",
    "AccessTrace",
    "Meter",
    "CellArray",
    "trace_run",
    "select",
    "cmp_ex_er",
    "is_empty",
    "le",
]


class _Empty:
    """The empty word.  A distinct object rather than a reserved payload."""

    __slots__ = ()
    _instance: Optional["_Empty"] = None

    def __new__(cls) -> "_Empty":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __str__(self) -> str:
        return "-"

    def __reduce__(self):
        return (_Empty, ())

    def __bool__(self) -> bool:
        return False


EMPTY = _Empty()


def is_empty_word(x: Any) -> bool:
    """Uncharged emptiness test, for harness and debug code only."""
    return x is EMPTY


@dataclass(frozen=True)
class OpCounters:
    e_ops: int = 0
    c_ops: int = 0
    reads: int = 0
    writes: int = 0

    @property
    def accesses(self) -> int:
        return self.reads + self.writes

    def __sub__(self, other: "OpCounters") -> "OpCounters":
        return OpCounters(
            self.e_ops - other.e_ops,
            self.c_ops - other.c_ops,
            self.reads - other.reads,
            self.writes - other.writes,
        )


# Record layouts inside an AccessTrace:
#   ("r", sid, idx) / ("w", sid, idx)        single cell
#   ("m", dst_sid, dst, src_sid, src, n)     n conditional moves, cell by cell
#   ("v", dst_sid, dst, src_sid, src, n)     same, source read back to front
_MOVE_KINDS = ("m", "v")


class AccessTrace:
    """Ordered access records for one run.

    Block moves are stored compactly; :meth:`events` expands them into
    ``(structure_id, index, "read"|"write")`` triples.  Two traces with equal
    records have equal event lists.
    """

    __slots__ = ("records",)

    def __init__(self, records: Optional[List[tuple]] = None) -> None:
        self.records: List[tuple] = [] if records is None else records

    def __len__(self) -> int:
        total = 0
        for r in self.records:
            if r[0] in _MOVE_KINDS:
                total += 4 * r[5]
            elif r[0] == "w*":
                total += r[2]
            else:
                total += 1
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AccessTrace):
            return NotImplemented
        return self.records == other.records

    def events(self) -> Iterator[Tuple[int, int, str]]:
        for r in self.records:
            kind = r[0]
            if kind == "r":
                yield (r[1], r[2], "read")
            elif kind == "w":
                yield (r[1], r[2], "write")
            elif kind == "w*":
                for i in range(r[2]):
                    yield (r[1], i, "write")
            else:
                _, dsid, dst, ssid, src, n = r
                for k in range(n):
                    s = src + (n - 1 - k if kind == "v" else k)
                    yield (ssid, s, "read")
                    yield (dsid, dst + k, "read")
                    yield (dsid, dst + k, "write")
                    yield (ssid, s, "write")

    def to_bytes(self) -> bytes:
        return repr(self.records).encode()

    def digest(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()


class Meter:
    """Per-instance counters plus an optional trace.

    Composite structures share one meter between their parts so a single
    readout covers the whole operation.
    """

    __slots__ = ("e_ops", "c_ops", "reads", "writes", "trace", "_next_sid")

    def __init__(self, trace: bool = False) -> None:
        self.e_ops = 0
        self.c_ops = 0
        self.reads = 0
        self.writes = 0
        self.trace: Optional[AccessTrace] = AccessTrace() if trace else None
        self._next_sid = 0

    def new_sid(self) -> int:
        sid = self._next_sid
        self._next_sid += 1
        return sid

    def counters(self) -> OpCounters:
        return OpCounters(self.e_ops, self.c_ops, self.reads, self.writes)

    # -- primitives -----------------------------------------------------
    def select(self, b: Any, a: Any, c: Any) -> Any:
        """``c`` when ``b`` is set, else ``a``.  3 E-Ops."""
        self.e_ops += 3
        return c if b else a

    def cmp_ex_er(self, b: Any, a: Any, c: Any) -> Tuple[Any, Any]:
        """Move ``c`` into ``a`` and erase ``c`` when ``b`` is set.  7 E-Ops."""
        self.e_ops += 7
        if b:
            return c, EMPTY
        return a, c

    def is_empty(self, x: Any) -> bool:
        self.c_ops += 1
        return x is EMPTY

    def le(self, x: Any, y: Any) -> bool:
        """``x <= y`` with EMPTY above every value.  1 C-Op."""
        self.c_ops += 1
        if y is EMPTY:
            return True
        if x is EMPTY:
            return False
        return x <= y

    def eq(self, x: Any, y: Any) -> bool:
        self.c_ops += 1
        return x == y

    def and_(self, a: Any, b: Any) -> bool:
        """Product of two secret bits.  1 E-Op; negation is folded in for free."""
        self.e_ops += 1
        return bool(a) and bool(b)

    def or_(self, a: Any, b: Any) -> bool:
        self.e_ops += 1
        return bool(a) or bool(b)

    def add(self, x: Any, y: Any) -> Any:
        """Word addition; an EMPTY operand yields EMPTY.  1 E-Op."""
        self.e_ops += 1
        if x is EMPTY or y is EMPTY:
            return EMPTY
        return x + y

    def sub(self, x: Any, y: Any) -> Any:
        self.e_ops += 1
        if x is EMPTY or y is EMPTY:
            return EMPTY
        return x - y

    def half(self, x: Any) -> Any:
        """Floor division by two (a shift).  1 E-Op."""
        self.e_ops += 1
        if x is EMPTY:
            return EMPTY
        return x >> 1

    def mul(self, x: Any, y: Any) -> Any:
        self.e_ops += 1
        if x is EMPTY or y is EMPTY:
            return EMPTY
        return x * y


class CellArray:
    """A fixed-size array of words whose every access is counted and traced."""

    __slots__ = ("meter", "sid", "cells")

    def __init__(self, meter: Meter, size: int, fill: Any = EMPTY) -> None:
        if size < 0:
            raise ValueError("size must be non-negative")
        self.meter = meter
        self.sid = meter.new_sid()
        self.cells: List[Any] = [fill] * size

    def __len__(self) -> int:
        return len(self.cells)

    def read(self, i: int) -> Any:
        m = self.meter
        m.reads += 1
        if m.trace is not None:
            m.trace.records.append(("r", self.sid, i))
        return self.cells[i]

    def write(self, i: int, v: Any) -> None:
        m = self.meter
        m.writes += 1
        if m.trace is not None:
            m.trace.records.append(("w", self.sid, i))
        self.cells[i] = v

    def move(self, b: Any, dst: int, src: int, n: int = 1,
             src_arr: Optional["CellArray"] = None, reverse: bool = False) -> None:
        """``n`` cmp_ex_er moves from ``src_arr[src:src+n]`` into ``self[dst:dst+n]``.

        With ``reverse`` the source block is consumed back to front.  Both
        blocks are read and rewritten whatever ``b`` is.  A move that would
        overwrite an occupied destination cell raises ``AssertionError``.
        """
        sa = self if src_arr is None else src_arr
        m = self.meter
        m.e_ops += 7 * n
        m.reads += 2 * n
        m.writes += 2 * n
        if m.trace is not None:
            m.trace.records.append(("v" if reverse else "m", self.sid, dst, sa.sid, src, n))
        c = self.cells
        s = sa.cells
        old_dst = c[dst:dst + n]
        old_src = s[src:src + n]
        if b:
            if old_dst.count(EMPTY) != n:
                raise AssertionError("move would overwrite an occupied cell")
            if reverse:
                old_src.reverse()
            c[dst:dst + n] = old_src
            s[src:src + n] = [EMPTY] * n
        else:
            c[dst:dst + n] = old_dst
            s[src:src + n] = old_src

    def clear(self) -> None:
        """Public reset: write EMPTY to every cell."""
        m = self.meter
        n = len(self.cells)
        m.writes += n
        if m.trace is not None:
            m.trace.records.append(("w*", self.sid, n))
        self.cells[:] = [EMPTY] * n

    def snapshot(self) -> List[Any]:
        """Untraced copy of the cells, for tests and debugging."""
        return list(self.cells)


def trace_run(f: Callable[[Meter], Any]) -> Tuple[AccessTrace, OpCounters]:
    """Run ``f`` against a fresh tracing meter and return what it recorded."""
    m = Meter(trace=True)
    f(m)
    assert m.trace is not None
    return m.trace, m.counters()


# Module-level forms of the primitives, charging the given meter.
def select(meter: Meter, b: Any, a: Any, c: Any) -> Any:
    return meter.select(b, a, c)


def cmp_ex_er(meter: Meter, b: Any, a: Any, c: Any) -> Tuple[Any, Any]:
    return meter.cmp_ex_er(b, a, c)


def is_empty(meter: Meter, x: Any) -> bool:
    return meter.is_empty(x)


def le(meter: Meter, x: Any, y: Any) -> bool:
    return meter.le(x, y)


def expand_clear(records: Sequence[tuple]) -> List[tuple]:
    """Expand ``("w*", sid, n)`` records into single writes (debug helper)."""
    out: List[tuple] = []
    for r in records:
        if r[0] == "w*":
            out.extend(("w", r[1], i) for i in range(r[2]))
        else:
            out.append(r)
    return out
