"""Oblivious queues and sorts with access-trace and operation-count instrumentation."""
from .apps import eval_postfix, stock_span, stock_span_values
from .bench import BenchConfig, BenchRow, LinearQueue, ReferenceQueue, run_bench
from .core import EMPTY, AccessTrace, CellArray, Meter, OpCounters, trace_run
from .deque import DoubleEndedQueue
from .fifo import B2BFifoQueue, FifoQueue
from .lifo import LifoQueue, PopperQueue
from .prioqueue import DoubleEndedPrioQueue, PrioItem
from .sort import o_mergesort, o_quicksort

__all__ = [
    "EMPTY",
    "AccessTrace",
    "CellArray",
    "Meter",
    "OpCounters",
    "trace_run",
    "LifoQueue",
    "PopperQueue",
    "FifoQueue",
    "B2BFifoQueue",
    "DoubleEndedQueue",
    "DoubleEndedPrioQueue",
    "PrioItem",
    "o_mergesort",
    "o_quicksort",
    "eval_postfix",
    "stock_span",
    "stock_span_values",
    "LinearQueue",
    "ReferenceQueue",
    "BenchConfig",
    "BenchRow",
    "run_bench",
]
