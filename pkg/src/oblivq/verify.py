"""Obliviousness and oracle checks shared by the CLI and the test suite.

An op *skeleton* is the public part of a workload: which operation runs at
each step.  The data (pushed words, pop condition bits) is chosen separately,
so two runs of one skeleton with different data must leave identical traces.
"""
from __future__ import annotations

import bisect
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .core import EMPTY, AccessTrace, Meter
from .deque import DoubleEndedQueue
from .fifo import B2BFifoQueue, FifoQueue
from .lifo import LifoQueue, PopperQueue, levels_for
from .prioqueue import DoubleEndedPrioQueue, PrioItem

__all__ = [
    "VERIFIABLE",
    "random_skeleton",
    "random_data",
    "run_skeleton",
    "trace_pair",
    "oblivious_trials",
    "oracle_run",
    "oracle_trials",
    "VerifyReport",
]

VERIFIABLE = ("lifo", "popper", "fifo", "b2b", "deque", "prio")

# Op names per structure; the first half are pushes, the rest pops.
_OPS: Dict[str, Tuple[str, ...]] = {
    "lifo": ("push", "pop"),
    "fifo": ("push", "pop"),
    "b2b": ("push", "pop"),
    "deque": ("push_front", "push_back", "pop_front", "pop_back"),
    "prio": ("push", "pop_min", "pop_max"),
    "popper": ("pop",),
}


def _is_push(op: str) -> bool:
    return op.startswith("push") or op == "load"


def _build(structure: str, capacity: int, meter: Meter) -> Any:
    if structure == "lifo":
        return LifoQueue.with_capacity(capacity, meter)
    if structure == "popper":
        return PopperQueue(levels_for(capacity, 2), meter)
    if structure == "fifo":
        return FifoQueue(capacity, meter)
    if structure == "b2b":
        return B2BFifoQueue.with_capacity(capacity, meter)
    if structure == "deque":
        return DoubleEndedQueue(capacity, meter)
    if structure == "prio":
        return DoubleEndedPrioQueue(capacity, meter)
    raise ValueError(f"unknown structure {structure!r}; pick one of {', '.join(VERIFIABLE)}")


def random_skeleton(structure: str, capacity: int, length: int, rng: random.Random) -> List[Any]:
    """A public op sequence.  The popper skeleton opens with one bulk load."""
    if structure == "popper":
        s = levels_for(capacity, 2)
        x = rng.randrange(0, s)
        return [("load", 1 << x)] + ["pop"] * max(0, length - 1)
    ops = _OPS[structure]
    return [rng.choice(ops) for _ in range(length)]


def random_data(skeleton: Sequence[Any], rng: random.Random, empty_rate: float = 0.2,
                pop_rate: float = 0.8) -> List[Any]:
    """One datum per step: a word (or EMPTY) for pushes, a bit for pops."""
    data: List[Any] = []
    for op in skeleton:
        if isinstance(op, tuple):
            n = op[1]
            vals = sorted(rng.randrange(1000) for _ in range(n))
            cut = rng.randrange(n + 1)
            data.append(vals[:cut] + [EMPTY] * (n - cut))
        elif _is_push(op):
            data.append(EMPTY if rng.random() < empty_rate else rng.randrange(-10**6, 10**6))
        else:
            data.append(1 if rng.random() < pop_rate else 0)
    return data


def run_skeleton(structure: str, capacity: int, skeleton: Sequence[Any], data: Sequence[Any],
                 meter: Meter) -> List[Any]:
    """Drive one structure; returns the pop outputs.

    Pushes that would overflow are replaced by EMPTY pushes.  That check is
    made by the caller, which knows the fill level, and changes only data.
    """
    obj = _build(structure, capacity, meter)
    limit = obj.capacity
    fill = 0
    outs: List[Any] = []
    for op, d in zip(skeleton, data):
        if isinstance(op, tuple):
            obj.load_sorted(d)
            fill = sum(v is not EMPTY for v in d)
            continue
        if _is_push(op):
            if d is not EMPTY and fill >= limit:
                d = EMPTY
            if structure == "prio" and d is not EMPTY:
                d = PrioItem(d, fill)
            getattr(obj, op)(d)
            if d is not EMPTY:
                fill += 1
        else:
            v = getattr(obj, op)(d)
            outs.append(v)
            if v is not EMPTY:
                fill -= 1
    return outs


def trace_pair(structure: str, capacity: int, skeleton: Sequence[Any],
               rng: random.Random) -> Tuple[AccessTrace, AccessTrace]:
    traces = []
    for _ in range(2):
        m = Meter(trace=True)
        run_skeleton(structure, capacity, skeleton, random_data(skeleton, rng), m)
        assert m.trace is not None
        traces.append(m.trace)
    return traces[0], traces[1]


@dataclass
class VerifyReport:
    structure: str
    trials: int
    trace_mismatches: int = 0
    oracle_mismatches: int = 0
    ops_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.trace_mismatches == 0 and self.oracle_mismatches == 0


def oblivious_trials(structure: str, trials: int, seed: int = 0, max_len: int = 4096,
                     min_log_cap: int = 4, max_log_cap: int = 12) -> int:
    """Number of skeletons whose two random-data traces differ."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        cap = 1 << rng.randint(min_log_cap, max_log_cap)
        skel = random_skeleton(structure, cap, rng.randint(1, max_len), rng)
        a, b = trace_pair(structure, cap, skel, rng)
        if a.to_bytes() != b.to_bytes():
            bad += 1
    return bad


# -- reference implementations ------------------------------------------

class _RefPrio:
    def __init__(self) -> None:
        self.keys: List[int] = []

    def push(self, x: Any) -> None:
        bisect.insort(self.keys, x.priority)

    def pop_min(self) -> Any:
        return self.keys.pop(0) if self.keys else EMPTY

    def pop_max(self) -> Any:
        return self.keys.pop() if self.keys else EMPTY


def oracle_run(structure: str, capacity: int, n_ops: int, rng: random.Random) -> Tuple[int, int]:
    """Random workload checked step by step against a reference.

    Returns ``(mismatches, pops_checked)``.  The back-to-back FIFO may hold
    an element back while it is less than half full; its check accepts EMPTY
    then and otherwise demands the oldest outstanding element.
    """
    skel = random_skeleton(structure, capacity, n_ops, rng)
    data = random_data(skel, rng)
    m = Meter()
    obj = _build(structure, capacity, m)
    limit = obj.capacity
    ref: Any = _RefPrio() if structure == "prio" else deque()
    bad = checked = 0
    for op, d in zip(skel, data):
        if isinstance(op, tuple):
            obj.load_sorted(d)
            ref.extend(v for v in d if v is not EMPTY)
            continue
        if _is_push(op):
            size = len(ref.keys) if structure == "prio" else len(ref)
            if d is not EMPTY and size >= limit:
                d = EMPTY
            if structure == "prio" and d is not EMPTY:
                d = PrioItem(d, rng.randrange(100))
            getattr(obj, op)(d)
            if d is EMPTY:
                continue
            if structure == "lifo" or op == "push_front":
                ref.append(d) if structure == "lifo" else ref.appendleft(d)
            elif structure == "prio":
                ref.push(d)
            else:
                ref.append(d)
            continue
        got = getattr(obj, op)(d)
        checked += 1
        if structure == "prio":
            want = getattr(ref, op)() if d else EMPTY
            if (EMPTY if got is EMPTY else got.priority) != want:
                bad += 1
            continue
        if structure == "b2b":
            if got is EMPTY:
                if d and len(ref) * 2 >= obj.capacity:
                    bad += 1
                continue
            want = ref.popleft() if d and ref else EMPTY
            if got != want:
                bad += 1
            continue
        if not d or not ref:
            want = EMPTY
        elif structure in ("lifo", "popper"):
            want = ref.pop() if structure == "lifo" else ref.popleft()
        elif structure == "fifo" or op == "pop_front":
            want = ref.popleft()
        else:
            want = ref.pop()
        if got != want:
            bad += 1
    return bad, checked


def oracle_trials(structure: str, trials: int, seed: int = 0, ops: int = 2000,
                  min_log_cap: int = 1, max_log_cap: int = 8) -> Tuple[int, int]:
    """Run ``trials`` random workloads; returns (mismatches, pops checked)."""
    rng = random.Random(seed)
    bad = checked = 0
    for _ in range(trials):
        cap = 1 << rng.randint(min_log_cap, max_log_cap)
        b, c = oracle_run(structure, cap, ops, rng)
        bad += b
        checked += c
    return bad, checked


def verify(structure: str, trials: int, seed: int = 0, ops: int = 2000,
           progress: Optional[Callable[[str], None]] = None) -> VerifyReport:
    rep = VerifyReport(structure, trials)
    rep.trace_mismatches = oblivious_trials(structure, trials, seed, max_len=512, max_log_cap=8)
    if progress:
        progress(f"{structure}: {trials} skeleton pairs, {rep.trace_mismatches} trace mismatches")
    rep.oracle_mismatches, rep.ops_checked = oracle_trials(structure, trials, seed, ops)
    if progress:
        progress(f"{structure}: {rep.ops_checked} pops checked, {rep.oracle_mismatches} mismatches")
    return rep
