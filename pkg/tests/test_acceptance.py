"""Acceptance suite.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion with the measured numbers.

Run just this file with ``pytest tests/test_acceptance.py -v``.  It takes a
long time (well over an hour on one core), mostly in the trace-equality and
quicksort criteria.
"""
import math
import random
import time

import pytest

from oblivq.apps import encode_token, eval_postfix, eval_postfix_plain, stock_span_plain, stock_span_values
from oblivq.bench import BenchConfig, accesses_per_op, crossover_capacity, default_ops, overhead_ratio, run_bench
from oblivq.core import EMPTY, CellArray, Meter
from oblivq.lifo import LifoQueue
from oblivq.sort import mergesort_bounds, o_mergesort, o_quicksort, random_pivot
from oblivq.verify import VERIFIABLE, oblivious_trials, oracle_trials


def note(request, text):
    request.node.user_properties.append(("detail", text))
    print(text)


# -- 1: trace equality -----------------------------------------------------

_trace_seconds = {}


@pytest.mark.criterion("1")
@pytest.mark.parametrize("structure", VERIFIABLE)
def test_traces_identical_across_data(request, structure):
    t0 = time.perf_counter()
    bad = oblivious_trials(structure, 100, seed=1000 + VERIFIABLE.index(structure),
                           max_len=4096, min_log_cap=4, max_log_cap=12)
    _trace_seconds[structure] = time.perf_counter() - t0
    note(request, f"{structure}: 100 skeleton pairs, {bad} differing traces, "
                  f"{_trace_seconds[structure]:.0f}s")
    assert bad == 0


@pytest.mark.criterion("1 (runtime target)")
def test_trace_suite_runtime(request):
    missing = [s for s in VERIFIABLE if s not in _trace_seconds]
    if missing:
        pytest.skip(f"trace-equality tests did not run for {missing}")
    total = sum(_trace_seconds.values())
    note(request, f"600 skeleton pairs took {total:.0f}s (target < 120s)")
    assert total < 120


# -- 2: oracle equivalence -------------------------------------------------

@pytest.mark.criterion("2")
@pytest.mark.parametrize("structure", VERIFIABLE)
def test_matches_reference(request, structure):
    trials, ops = 50, 2000
    bad, checked = oracle_trials(structure, trials, seed=2000 + VERIFIABLE.index(structure),
                                 ops=ops, min_log_cap=1, max_log_cap=12)
    note(request, f"{structure}: {trials * ops} ops, {checked} pops checked, {bad} mismatches")
    assert trials * ops >= 10**5
    assert bad == 0


# -- 3: LIFO amortized cost ------------------------------------------------

def _window_means(q, op, count):
    m = q.meter
    period = q.period
    worst_c = worst_e = 0.0
    start = m.counters()
    for k in range(1, count + 1):
        op(k)
        if k % period == 0:
            now = m.counters()
            d = now - start
            worst_c = max(worst_c, d.c_ops / period)
            worst_e = max(worst_e, d.e_ops / period)
            start = now
    return worst_c, worst_e


@pytest.mark.criterion("3")
@pytest.mark.parametrize("s", range(4, 13))
def test_lifo_cost_bounds(request, s):
    q = LifoQueue(s, Meter())
    n = q.capacity
    c_bound = 8 * q.q + 2
    e_bound = 14 * q.q * math.log2(n / q.q)
    push_c, push_e = _window_means(q, lambda k: q.push(k), n)
    assert len(q) == n
    pop_c, pop_e = _window_means(q, lambda k: q.pop(1), n)
    assert len(q) == 0
    note(request, f"s={s}: push C/E {push_c:.2f}/{push_e:.1f}, pop C/E {pop_c:.2f}/{pop_e:.1f}, "
                  f"bounds {c_bound}/{e_bound:.1f}")
    assert max(push_c, pop_c) <= c_bound
    assert max(push_e, pop_e) <= e_bound


# -- 4: mergesort cost -----------------------------------------------------

@pytest.mark.criterion("4")
@pytest.mark.parametrize("k", range(4, 13))
def test_mergesort_cost_bounds(request, k):
    n = 1 << k
    rng = random.Random(k)
    vals = [rng.randrange(10**9) for _ in range(n)]
    m = Meter()
    out = o_mergesort(vals, meter=m)
    c_bound, e_bound = mergesort_bounds(n)
    note(request, f"n={n}: C-Ops {m.c_ops} <= {c_bound:.0f}, E-Ops {m.e_ops} <= {e_bound:.0f}")
    assert out == sorted(vals)
    assert m.c_ops <= c_bound
    assert m.e_ops <= e_bound


# -- 5: two-state parts ----------------------------------------------------

@pytest.mark.criterion("5")
def test_parts_two_state_after_every_op(request):
    rng = random.Random(5)
    total = violations = 0
    for segment in range(10):
        s = 1 + segment % 8
        q = LifoQueue(s, Meter(), debug=True)
        push_rate = (0.35, 0.5, 0.65, 0.8)[segment % 4]
        for _ in range(10**4):
            if rng.random() < push_rate:
                real = len(q) < q.capacity and rng.random() < 0.85
                q.push(rng.randrange(1000) if real else EMPTY)
            else:
                q.pop(rng.random() < 0.85)
            total += 1
            violations += not q.two_state_ok()
    note(request, f"{total} ops, {violations} violations")
    assert total == 10**5
    assert violations == 0


# -- 6: pivot quality ------------------------------------------------------

@pytest.mark.criterion("6")
def test_pivot_splits_quarters(request):
    n, n_p, trials = 1000, 131, 10**4
    arr = CellArray(Meter(), n)
    arr.cells[:] = list(range(1, n + 1))
    good = 0
    for t in range(trials):
        p = random_pivot(arr, n, n_p, random.Random(t))
        below, above = p - 1, n - p
        good += below >= n // 4 and above >= n // 4
    rate = good / trials
    note(request, f"{good}/{trials} pivots leave >= {n // 4} on each side ({rate:.2%})")
    assert rate >= 0.99


# -- 7: quicksort ----------------------------------------------------------

_qs_ops = {}


@pytest.mark.criterion("7")
@pytest.mark.parametrize("n", [512, 1024, 2048, 4096])
def test_quicksort_runs(request, n):
    flagged = wrong = 0
    for seed in range(100):
        rng = random.Random(7000 + seed)
        vals = rng.sample(range(10 * n), n)
        m = Meter()
        res = o_quicksort(vals, c=2, seed=seed, meter=m)
        if seed == 0:
            _qs_ops[n] = m.e_ops + m.c_ops
        if not res.ok:
            flagged += 1
        elif res.values != sorted(vals):
            wrong += 1
    note(request, f"n={n}: 100 runs, {flagged} flagged, {wrong} unflagged but unsorted")
    assert wrong == 0
    assert flagged <= 1


@pytest.mark.criterion("7 (scaling)")
def test_quicksort_scaling(request):
    sizes = [512, 1024, 2048, 4096]
    for n in sizes:
        if n not in _qs_ops:
            m = Meter()
            o_quicksort(random.Random(n).sample(range(10 * n), n), c=2, seed=0, meter=m)
            _qs_ops[n] = m.e_ops + m.c_ops
    k_fit = _qs_ops[512] / (512 * 9)
    ratios = {n: _qs_ops[n] / (n * math.log2(n)) for n in sizes}
    note(request, "ops/(n log n): " + ", ".join(f"{n}: {r:.0f}" for n, r in ratios.items())
         + f"; K fitted at 512 = {k_fit:.0f}")
    for n in sizes[1:]:
        assert _qs_ops[n] <= k_fit * n * math.log2(n)


# -- 8: case studies -------------------------------------------------------

def _random_postfix(rng, numbers):
    toks, depth, used = [], 0, 0
    while used < numbers or depth > 1:
        if used < numbers and (depth < 2 or rng.random() < 0.5):
            toks.append(str(rng.randint(-20, 20)))
            depth += 1
            used += 1
        else:
            toks.append(rng.choice("+*"))
            depth -= 1
    return toks


@pytest.mark.criterion("8")
def test_postfix_against_direct_evaluator(request):
    rng = random.Random(8)
    bad = 0
    for _ in range(1000):
        toks = _random_postfix(rng, rng.randint(1, 128))
        bound = rng.randint(len(toks), 256)
        bad += eval_postfix([encode_token(t) for t in toks], bound) != eval_postfix_plain(toks)
    note(request, f"1000 expressions, {bad} mismatches")
    assert bad == 0


@pytest.mark.criterion("8")
def test_stock_span_against_textbook(request):
    rng = random.Random(88)
    bad = 0
    for _ in range(1000):
        prices = [rng.randrange(1, 200) for _ in range(rng.randint(1, 256))]
        bad += stock_span_values(prices) != stock_span_plain(prices)
    note(request, f"1000 price series, {bad} mismatches")
    assert bad == 0


# -- 9: benchmark properties -----------------------------------------------

@pytest.mark.criterion("9")
def test_crossover_band(request):
    caps = [8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024, 2048]
    cross = crossover_capacity(caps, ops=4096)
    note(request, f"LIFO needs fewer accesses than the linear queue from capacity {cross}")
    assert cross is not None and 16 <= cross <= 512


@pytest.mark.criterion("9")
def test_access_ratio_at_ten_thousand(request):
    lifo = accesses_per_op("lifo", 10**4, default_ops(10**4))
    linear = accesses_per_op("linear", 10**4, 20)
    note(request, f"accesses/op: linear {linear:.0f}, lifo {lifo:.1f}, ratio {linear / lifo:.1f}")
    assert linear / lifo >= 50


@pytest.mark.criterion("9")
def test_overhead_against_reference(request):
    ratio = overhead_ratio(10**4, default_ops(10**4))
    note(request, f"LIFO / reference wall-time ratio at capacity 10^4: {ratio:.1f}")
    assert 10 <= ratio <= 200


# -- 10: deque and priority queue cost growth ------------------------------

@pytest.mark.criterion("10")
@pytest.mark.parametrize("structure", ["deque", "prio"])
def test_polylog_cost_fit(request, structure):
    costs = {}
    for k in range(6, 13):
        n = 1 << k
        row = run_bench(BenchConfig(structure, n, default_ops(n), seed=10), write=False)[0]
        costs[k] = (row.e_ops + row.c_ops) / row.ops
    fitted = costs[6] / 36
    note(request, f"{structure}: ops per op / log2^2 n = "
         + ", ".join(f"2^{k}: {c / k / k:.1f}" for k, c in costs.items()) + f"; C = {fitted:.1f}")
    for k, c in costs.items():
        assert c <= fitted * k * k
