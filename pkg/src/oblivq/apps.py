"""Two case studies on the oblivious LIFO: postfix evaluation and stock span.

Both run a fixed number of loop iterations for a given length bound and
issue the same push/pop skeleton whatever the input holds.
"""
from __future__ import annotations

from typing import Any, List, Optional, Sequence

from .core import EMPTY, Meter
from .lifo import LifoQueue

__all__ = [
    "PLUS",
    "TIMES",
    "encode_token",
    "encode_expr",
    "eval_postfix",
    "eval_postfix_plain",
    "stock_span",
    "stock_span_values",
    "stock_span_plain",
]

# Numbers are stored as 4*v so the two operator codes never collide with them.
PLUS = 1
TIMES = 2


def encode_token(tok: str) -> Any:
    if tok == "+":
        return PLUS
    if tok in ("*", "x"):
        return TIMES
    if tok in ("-", ""):
        return EMPTY
    return 4 * int(tok)


def encode_expr(expr: str) -> List[Any]:
    return [encode_token(t) for t in expr.split()]


def eval_postfix(symbols: Sequence[Any], bound: Optional[int] = None,
                 meter: Optional[Meter] = None) -> Any:
    """Evaluate encoded postfix ``symbols`` (padded with EMPTY up to ``bound``)."""
    n = len(symbols) if bound is None else bound
    if len(symbols) > n:
        raise ValueError("expression longer than its bound")
    m = meter if meter is not None else Meter()
    expr = LifoQueue.with_capacity(max(n, 1), m)
    padded = list(symbols) + [EMPTY] * (n - len(symbols))
    for sym in reversed(padded):
        expr.push(sym)
    st = LifoQueue.with_capacity(max(n, 1), m)
    for _ in range(n):
        sym = expr.pop(1)
        is_add = m.eq(sym, PLUS)
        is_mul = m.eq(sym, TIMES)
        is_num = m.and_(m.and_(not m.is_empty(sym), not is_add), not is_mul)
        value = m.half(m.half(sym))
        st.push(m.select(is_num, EMPTY, value))
        res_add = m.add(st.pop(is_add), st.pop(is_add))
        res_mul = m.mul(st.pop(is_mul), st.pop(is_mul))
        to_push = m.select(is_mul, EMPTY, res_mul)
        to_push = m.select(is_add, to_push, res_add)
        st.push(to_push)
    return st.pop(1)


def eval_postfix_plain(tokens: Sequence[str]) -> int:
    """Direct evaluator used as a reference."""
    st: List[int] = []
    for tok in tokens:
        if tok == "+":
            b, a = st.pop(), st.pop()
            st.append(a + b)
        elif tok in ("*", "x"):
            b, a = st.pop(), st.pop()
            st.append(a * b)
        else:
            st.append(int(tok))
    if len(st) != 1:
        raise ValueError("malformed expression")
    return st[0]


def stock_span(prices: Sequence[Any], bound: Optional[int] = None,
               meter: Optional[Meter] = None) -> LifoQueue:
    """Oblivious stock span.

    Runs ``2*bound`` iterations: each one either settles the current day or
    discards one stack entry, and ``bound`` days need at most ``2*bound - 1``
    of those.  Every iteration pushes onto the output LIFO; discarding steps
    push EMPTY, which stores nothing, so popping it yields the spans newest
    first.
    """
    n = len(prices) if bound is None else bound
    if len(prices) > n:
        raise ValueError("more prices than the bound allows")
    m = meter if meter is not None else Meter()
    days = LifoQueue.with_capacity(max(n, 1), m)
    for p in reversed(list(prices) + [EMPTY] * (n - len(prices))):
        days.push(p)
    st = LifoQueue.with_capacity(max(n, 1), m)
    out = LifoQueue.with_capacity(max(n, 1), m)
    day = 0
    for _ in range(2 * n):
        cur = days.top()
        top = st.pop(1)
        has = not m.is_empty(top)
        live = not m.is_empty(cur)
        top_day, top_price = top if top is not EMPTY else (EMPTY, EMPTY)
        drop = m.and_(m.and_(live, has), m.le(top_price, cur))
        settle = m.and_(live, not drop)
        st.push(m.select(drop, top, EMPTY))
        span = m.select(has, m.add(day, 1), m.sub(day, top_day))
        out.push(m.select(settle, EMPTY, span))
        st.push(m.select(settle, EMPTY, (day, cur)))
        days.pop(settle)
        day = m.add(day, settle)
    return out


def stock_span_values(prices: Sequence[Any], bound: Optional[int] = None,
                      meter: Optional[Meter] = None) -> List[Any]:
    """Spans in day order, read back from :func:`stock_span` (untraced)."""
    return stock_span(prices, bound, meter).contents()[::-1]


def stock_span_plain(prices: Sequence[int]) -> List[int]:
    """Textbook stack-based stock span, used as a reference."""
    spans: List[int] = []
    st: List[int] = []
    for i, p in enumerate(prices):
        while st and prices[st[-1]] <= p:
            st.pop()
        spans.append(i + 1 if not st else i - st[-1])
        st.append(i)
    return spans
