"""Baselines and the benchmark harness.

Two baselines sit next to the oblivious structures: :class:`LinearQueue`, an
oblivious stack that sweeps every cell on every operation, and
:class:`ReferenceQueue`, a plain list wrapper with the same EMPTY/``do_pop``
conventions.  :func:`run_bench` drives a seeded random push/pop schedule and
reports wall time plus the meter's counters.
"""
from __future__ import annotations

import csv
import random
import time
from collections import deque
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence

from .core import EMPTY, CellArray, Meter
from .deque import DoubleEndedQueue
from .fifo import B2BFifoQueue, FifoQueue
from .lifo import LifoQueue
from .prioqueue import DoubleEndedPrioQueue, PrioItem

__all__ = [
    "STRUCTURES",
    "CSV_COLUMNS",
    "LinearQueue",
    "ReferenceQueue",
    "BenchConfig",
    "BenchRow",
    "default_ops",
    "make_structure",
    "run_bench",
    "run_sweep",
    "write_csv",
    "write_gnuplot",
    "accesses_per_op",
    "crossover_capacity",
    "overhead_ratio",
]

STRUCTURES = ("lifo", "fifo", "b2b", "deque", "prio", "linear", "reference", "null")
CSV_COLUMNS = ("structure", "capacity", "ops", "wall_ms", "e_ops", "c_ops", "accesses")


class LinearQueue:
    """Oblivious stack that reads and rewrites all ``capacity`` cells per op.

    Cell 0 is the top.  A push carries the new word down the array one cell
    at a time; a pop pulls every cell up by one.  Both sweeps run whatever
    the condition bit says, so each operation makes ``capacity`` reads and
    ``capacity`` writes.
    """

    def __init__(self, capacity: int, meter: Optional[Meter] = None) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.meter = meter if meter is not None else Meter()
        self.capacity = capacity
        self.cells = CellArray(self.meter, capacity)

    def push(self, x: Any) -> None:
        m = self.meter
        b = not m.is_empty(x)
        carry = x
        for i in range(self.capacity):
            v = self.cells.read(i)
            self.cells.write(i, m.select(b, v, carry))
            carry = v
        if b and carry is not EMPTY:
            raise OverflowError("push onto a full queue")

    def pop(self, do_pop: Any = 1) -> Any:
        m = self.meter
        n = self.capacity
        cur = self.cells.read(0)
        result = cur
        for i in range(n):
            nxt = self.cells.read(i + 1) if i + 1 < n else EMPTY
            self.cells.write(i, m.select(do_pop, cur, nxt))
            cur = nxt
        return m.select(do_pop, EMPTY, result)

    def contents(self) -> List[Any]:
        return [v for v in self.cells.cells if v is not EMPTY]

    def __len__(self) -> int:
        return len(self.contents())


class ReferenceQueue:
    """Non-oblivious stack or FIFO over a Python container.

    EMPTY pushes and ``do_pop=0`` pops are no-ops, as in the oblivious
    structures.  Each real push or pop counts one access.
    """

    def __init__(self, capacity: int, meter: Optional[Meter] = None, fifo: bool = False) -> None:
        self.meter = meter if meter is not None else Meter()
        self.capacity = capacity
        self.fifo = fifo
        self.items: deque = deque()

    def push(self, x: Any) -> None:
        if x is EMPTY:
            return
        if len(self.items) >= self.capacity:
            raise OverflowError("push onto a full queue")
        self.meter.writes += 1
        self.items.append(x)

    def pop(self, do_pop: Any = 1) -> Any:
        if not do_pop or not self.items:
            return EMPTY
        self.meter.reads += 1
        return self.items.popleft() if self.fifo else self.items.pop()

    def contents(self) -> List[Any]:
        return list(self.items)

    def __len__(self) -> int:
        return len(self.items)


class NullQueue:
    """Does nothing.  Used to time the harness loop on its own."""

    def __init__(self, capacity: int, meter: Optional[Meter] = None) -> None:
        self.capacity = capacity

    def push(self, x: Any) -> None:
        pass

    def pop(self, do_pop: Any = 1) -> Any:
        return EMPTY


@dataclass(frozen=True)
class BenchConfig:
    structure: str
    capacity: int
    ops: int
    seed: int = 0
    csv_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}; pick one of {', '.join(STRUCTURES)}")
        if self.capacity < 1:
            raise ValueError("capacity must be at least 1")
        if self.ops < 1:
            raise ValueError("ops must be at least 1")


@dataclass(frozen=True)
class BenchRow:
    structure: str
    capacity: int
    ops: int
    wall_ms: float
    e_ops: int
    c_ops: int
    accesses: int

    @property
    def accesses_per_op(self) -> float:
        return self.accesses / self.ops


def default_ops(capacity: int) -> int:
    """Operation count used for the published runs: enough for several full cycles."""
    return max(100000, 2 * capacity)


def make_structure(name: str, capacity: int, meter: Meter) -> Any:
    if name == "lifo":
        return LifoQueue.with_capacity(capacity, meter)
    if name == "fifo":
        return FifoQueue(capacity, meter)
    if name == "b2b":
        return B2BFifoQueue.with_capacity(capacity, meter)
    if name == "deque":
        return DoubleEndedQueue(capacity, meter)
    if name == "prio":
        return DoubleEndedPrioQueue(capacity, meter)
    if name == "linear":
        return LinearQueue(capacity, meter)
    if name == "reference":
        return ReferenceQueue(capacity, meter)
    if name == "null":
        return NullQueue(capacity, meter)
    raise ValueError(f"unknown structure {name!r}")


def _schedule(cfg: BenchConfig) -> List[tuple]:
    """Seeded 50/50 push/pop schedule.

    The harness tracks the fill level (it is the client, so it may) and turns
    a push on a full structure into an EMPTY push.
    """
    rng = random.Random(cfg.seed)
    two_ends = cfg.structure in ("deque", "prio")
    ops = []
    for _ in range(cfg.ops):
        is_push = rng.random() < 0.5
        end = rng.random() < 0.5 if two_ends else False
        ops.append((is_push, end, rng.randrange(1 << 30)))
    return ops


def _bind(name: str, obj: Any) -> tuple:
    if name == "deque":
        return ((obj.push_back, obj.push_front), (obj.pop_front, obj.pop_back))
    if name == "prio":
        push = obj.push
        return ((lambda v: push(v if v is EMPTY else PrioItem(v)), ) * 2, (obj.pop_min, obj.pop_max))
    return ((obj.push, obj.push), (obj.pop, obj.pop))


def run_bench(cfg: BenchConfig, write: bool = True) -> List[BenchRow]:
    """Run one configuration; counters are deterministic for a fixed seed."""
    m = Meter()
    obj = make_structure(cfg.structure, cfg.capacity, m)
    pushes, pops = _bind(cfg.structure, obj)
    schedule = _schedule(cfg)
    limit = getattr(obj, "capacity", cfg.capacity)
    fill = 0
    t0 = time.perf_counter()
    for is_push, end, value in schedule:
        if is_push:
            if fill < limit:
                pushes[end](value)
                fill += 1
            else:
                pushes[end](EMPTY)
        else:
            if pops[end](1) is not EMPTY:
                fill -= 1
    wall_ms = (time.perf_counter() - t0) * 1000.0
    c = m.counters()
    rows = [BenchRow(cfg.structure, cfg.capacity, cfg.ops, wall_ms, c.e_ops, c.c_ops, c.accesses)]
    if write and cfg.csv_path:
        write_csv(rows, cfg.csv_path)
    return rows


def run_sweep(structures: Iterable[str], capacities: Iterable[int], ops: Optional[int] = None,
              seed: int = 0, csv_path: Optional[str] = None,
              progress: Optional[Callable[[BenchRow], None]] = None) -> List[BenchRow]:
    rows: List[BenchRow] = []
    caps = list(capacities)
    for name in structures:
        for cap in caps:
            cfg = BenchConfig(name, cap, ops if ops is not None else default_ops(cap), seed)
            row = run_bench(cfg, write=False)[0]
            rows.append(row)
            if progress is not None:
                progress(row)
    if csv_path:
        write_csv(rows, csv_path)
        write_gnuplot(csv_path)
    return rows


def write_csv(rows: Sequence[BenchRow], path: str) -> None:
    p = Path(path)
    try:
        with p.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in rows:
                d = asdict(r)
                d["wall_ms"] = f"{r.wall_ms:.3f}"
                w.writerow([d[k] for k in CSV_COLUMNS])
    except OSError as exc:
        raise OSError(f"cannot write benchmark CSV to {p}: {exc.strerror or exc}") from exc


_GNUPLOT = """\
# Accesses per operation against capacity, one line per structure.
set datafile separator ","
set logscale xy
set key top left
set xlabel "capacity"
set ylabel "accesses per operation"
set terminal pngcairo size 900,600
set output "{png}"
structures = "{structures}"
plot for [s in structures] "{csv}" using ((strcol(1) eq s) ? $2 : NaN):($7/$3) \\
    with linespoints title s
"""


def write_gnuplot(csv_path: str) -> Path:
    """Write ``<csv stem>.gp`` next to the CSV and return its path."""
    p = Path(csv_path)
    script = p.with_suffix(".gp")
    names = []
    try:
        with p.open(newline="") as fh:
            for rec in csv.DictReader(fh):
                if rec["structure"] not in names:
                    names.append(rec["structure"])
        script.write_text(_GNUPLOT.format(png=p.with_suffix(".png").name,
                                          structures=" ".join(names), csv=p.name))
    except OSError as exc:
        raise OSError(f"cannot write plot script next to {p}: {exc.strerror or exc}") from exc
    return script


def accesses_per_op(structure: str, capacity: int, ops: int, seed: int = 0) -> float:
    return run_bench(BenchConfig(structure, capacity, ops, seed), write=False)[0].accesses_per_op


def crossover_capacity(capacities: Sequence[int], ops: int = 2000, seed: int = 0,
                       structure: str = "lifo") -> Optional[int]:
    """Smallest capacity from which ``structure`` needs fewer accesses per op
    than the linear baseline at every larger capacity tried.  None if it never
    wins."""
    wins = [accesses_per_op(structure, c, ops, seed) < accesses_per_op("linear", c, ops, seed)
            for c in capacities]
    answer = None
    for cap, win in zip(reversed(capacities), reversed(wins)):
        if not win:
            break
        answer = cap
    return answer


def overhead_ratio(capacity: int, ops: int, structure: str = "lifo", repeats: int = 5,
                   seed: int = 0) -> float:
    """Wall-time cost of ``structure`` relative to the reference queue.

    Each side is the median over ``repeats`` runs minus the median time of
    the same loop driving :class:`NullQueue`, so the harness's own per-op
    cost does not dilute the comparison.
    """
    def med(name: str) -> float:
        times = sorted(run_bench(BenchConfig(name, capacity, ops, seed + r), write=False)[0].wall_ms
                       for r in range(repeats))
        return times[len(times) // 2]

    loop = med("null")
    return (med(structure) - loop) / max(med("reference") - loop, 1e-9)
