import random

import pytest
from hypothesis import given, settings, strategies as st

from oblivq.core import EMPTY, Meter
from oblivq.lifo import LifoQueue, PopperQueue, capacity_for, levels_for, trailing_ones

E = EMPTY


def set_sa(q, i, parts):
    """Overwrite subarray ``i``; each entry fills a whole part or leaves it empty."""
    n = 1 << i
    for j, v in enumerate(parts):
        start = q.part_start(i, j)
        q.cells.cells[start:start + n] = [E] * n if v is E else [v] * n


def sa_heads(q, i):
    return [part[0] for part in q.parts()[i]]


@pytest.mark.parametrize("s,cap", [(1, 4), (2, 12), (5, 124), (12, 16380)])
def test_capacity(s, cap):
    q = LifoQueue(s)
    assert q.capacity == cap == capacity_for(s)
    assert all(x is E for x in q.cells.cells)
    assert q.n_pu == q.n_po == 0


def test_rejects_zero_subarrays():
    with pytest.raises(ValueError):
        LifoQueue(0)


def test_levels_for_picks_smallest_fit():
    assert levels_for(4) == 1
    assert levels_for(5) == 2
    assert levels_for(10000) == 12
    assert LifoQueue.with_capacity(10000).capacity >= 10000


def test_trailing_ones():
    assert [trailing_ones(k) for k in range(8)] == [0, 1, 0, 2, 0, 1, 0, 3]


def test_twelve_pushes_come_back_reversed():
    q = LifoQueue(3)
    for x in range(1, 13):
        q.push(x)
    assert [q.pop(1) for _ in range(12)] == list(range(12, 0, -1))
    assert q.pop(1) is E


def test_empty_pushes_store_nothing():
    q = LifoQueue(3)
    for _ in range(1000):
        q.push(E)
    assert q.pop(1) is E
    assert len(q) == 0


def test_interleaved_empty_push():
    q = LifoQueue(3, debug=True)
    for x in [1, 2, 3, E, 4, 5]:
        q.push(x)
        assert q.two_state_ok()
    assert [q.pop(1) for _ in range(6)] == [5, 4, 3, 2, 1, E]


def test_conditional_pop():
    q = LifoQueue(2)
    q.push(9)
    assert q.pop(0) is E
    assert q.pop(1) == 9
    assert q.pop(1) is E


def test_peek_leaves_queue_unchanged():
    q = LifoQueue(2)
    assert q.peek() is E
    q.push(4)
    assert q.peek() == 4
    assert q.peek() == 4
    assert q.contents() == [4]


def test_shift_parts_right_moves_single_part():
    q = LifoQueue(3)
    set_sa(q, 1, ["a", E, E, E])
    q.shift_parts_right(1, 1)
    assert sa_heads(q, 1) == [E, "a", E, E]


def test_shift_parts_right_cascades():
    # Each slot is tested after the previous move, so the gap travels to the front.
    q = LifoQueue(3)
    set_sa(q, 1, ["a", "b", "c", E])
    q.shift_parts_right(1, 1)
    assert sa_heads(q, 1) == [E, "a", "b", "c"]


def test_shift_parts_right_disabled():
    q = LifoQueue(3)
    set_sa(q, 1, ["a", "b", E, E])
    before = list(q.cells.cells)
    q.shift_parts_right(1, 0)
    assert q.cells.cells == before


@pytest.mark.parametrize("state,want", [
    ([E, "a", E, E], ["a", E, E, E]),
    (["a", "b", "c", E], ["a", "b", "c", E]),
    ([E, E, E, E], [E, E, E, E]),
    ([E, "a", E, "b"], ["a", E, "b", E]),
])
def test_shift_parts_left(state, want):
    q = LifoQueue(3)
    set_sa(q, 1, state)
    q.shift_parts_left(1)
    assert sa_heads(q, 1) == want


def test_fifth_push_empties_two_parts():
    q = LifoQueue(2)
    for x in [1, 2, 3, 4]:
        q.push(x)
    assert q.parts()[0] == [[4], [3], [2], [1]]
    q.push(5)
    assert q.parts()[0] == [[5], [4], [3], [E]]
    assert q.parts()[1][0] == [2, 1]


def test_empty_two_parts_needs_a_full_subarray():
    q = LifoQueue(2)
    set_sa(q, 0, [1, 2, 3, E])
    q.empty_two_parts(0)
    assert sa_heads(q, 0) == [1, 2, 3, E]
    assert sa_heads(q, 1) == [E] * 4


def test_empty_two_parts_blocked_by_full_next_subarray():
    q = LifoQueue(2)
    set_sa(q, 0, [1, 2, 3, 4])
    set_sa(q, 1, [5, 6, 7, 8])
    before = list(q.cells.cells)
    q.empty_two_parts(0)
    assert q.cells.cells == before


def test_refill_pulls_older_pair_forward():
    q = LifoQueue(2)
    for x in [1, 2, 3, 4, 5]:
        q.push(x)
    assert [q.pop(1) for _ in range(3)] == [5, 4, 3]
    assert q.parts()[0] == [[2], [1], [E], [E]]
    assert q.parts()[1][0] == [E, E]


def test_refill_does_nothing_when_subarray_busy_or_source_empty():
    q = LifoQueue(2)
    set_sa(q, 0, [E, 1, E, E])
    set_sa(q, 1, [7, E, E, E])
    before = list(q.cells.cells)
    q.refill_two_parts(0)
    assert q.cells.cells == before
    q2 = LifoQueue(2)
    q2.refill_two_parts(0)
    assert all(x is E for x in q2.cells.cells)


def test_schedule_repeats_every_period():
    q = LifoQueue(5)
    tops = []
    n = 0
    for _ in range(16):
        seen = []
        n = q.move_between_sas(n, seen.append)
        tops.append(seen[0])
        assert seen == list(range(seen[0], -1, -1))
    assert tops == [0, 1, 0, 2, 0, 1, 0, 3] * 2


def test_schedule_counter_resets():
    q = LifoQueue(5)
    assert q.move_between_sas(0, lambda i: None) == 1
    assert q.move_between_sas(7, lambda i: None) == 0


def test_record_round_trip():
    q = LifoQueue(3)
    for x in range(7):
        q.push(x)
    q.pop(1)
    rec = q.to_record()
    r = LifoQueue.from_record(rec)
    assert r.to_record() == rec
    assert [r.pop(1) for _ in range(6)] == [q.pop(1) for _ in range(6)]
    with pytest.raises(ValueError):
        PopperQueue.from_record(rec)


def test_debug_shadow_catches_overflow():
    q = LifoQueue(1, debug=True)
    for x in range(4):
        q.push(x)
    with pytest.raises(OverflowError):
        q.push(99)


def test_full_queue_round_trip_all_sizes():
    for s in range(1, 8):
        q = LifoQueue(s, debug=True)
        for x in range(q.capacity):
            q.push(x)
        assert q.two_state_ok()
        assert [q.pop(1) for _ in range(q.capacity)] == list(range(q.capacity - 1, -1, -1))


ops = st.lists(st.tuples(st.booleans(), st.integers(0, 99), st.booleans()), max_size=400)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), ops)
def test_matches_plain_stack(s, seq):
    q = LifoQueue(s)
    ref = []
    for is_push, v, flag in seq:
        if is_push:
            x = v if flag and len(ref) < q.capacity else E
            q.push(x)
            if x is not E:
                ref.append(x)
        else:
            got = q.pop(int(flag))
            want = ref.pop() if flag and ref else E
            assert got == want
        assert q.two_state_ok()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.lists(st.booleans(), max_size=300), st.randoms(use_true_random=False))
def test_trace_depends_on_skeleton_only(s, skeleton, rnd):
    def run():
        m = Meter(trace=True)
        q = LifoQueue(s, m)
        fill = 0
        for is_push in skeleton:
            if is_push:
                x = rnd.randrange(100) if rnd.random() < 0.7 and fill < q.capacity else E
                q.push(x)
                fill += x is not E
            else:
                fill -= q.pop(rnd.randrange(2)) is not E
        return m.trace.to_bytes(), m.counters()

    assert run() == run()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.lists(st.tuples(st.booleans(), st.integers(0, 99), st.booleans()), max_size=300))
def test_fast_path_matches_traced_path(s, seq):
    fast = LifoQueue(s, Meter())
    slow = LifoQueue(s, Meter(trace=True))
    fill = 0
    for is_push, v, flag in seq:
        if is_push:
            x = v if flag and fill < fast.capacity else E
            fast.push(x)
            slow.push(x)
            fill += x is not E
        else:
            a, b = fast.pop(int(flag)), slow.pop(int(flag))
            assert a == b
            fill -= a is not E
        assert fast.cells.cells == slow.cells.cells
    assert fast.meter.counters() == slow.meter.counters()


def test_popper_loads_and_pops_in_order():
    for x in range(0, 6):
        vals = list(range(1 << x))
        p = PopperQueue(x + 1)
        p.load_sorted(vals)
        assert p.two_state_ok()
        assert [p.pop(1) for _ in range(len(vals))] == vals
        assert p.pop(1) is E


def test_popper_rejects_push_and_bad_loads():
    p = PopperQueue(3)
    with pytest.raises(TypeError):
        p.push(1)
    with pytest.raises(ValueError):
        p.load_sorted([1, 2, 3])
    with pytest.raises(ValueError):
        PopperQueue(2).load_sorted(list(range(8)))


def test_popper_conditional_pops():
    rng = random.Random(5)
    p = PopperQueue(6)
    vals = sorted(rng.randrange(100) for _ in range(32))
    p.load_sorted(vals)
    out = []
    for _ in range(200):
        v = p.pop(rng.randrange(2))
        if v is not E:
            out.append(v)
    assert out == vals[:len(out)]
