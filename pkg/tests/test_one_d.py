"""Tests for the 1D hash algorithms (reference implementations)."""

import pytest

from lphs.oracle import (
    DomainError,
    ExplicitOracle,
    Seed,
    ShiftedPair,
    SymbolOracle,
)
from lphs.one_d import (
    HashOutcome1D,
    IrwSchedule,
    basic_lphs,
    cyclic_rw_lphs,
    default_schedule,
    irw_lphs,
    las_vegas_lphs,
    narrow_alphabet,
    rw_lphs,
    widen_alphabet,
)

SEED = Seed(0xDEADBEEF_CAFEBABE_0F1E2D3C_4B5A6978)


def test_basic_direct_argmin():
    x = ExplicitOracle([5, 3, 9, 7])
    assert basic_lphs(x, 4).value == 1
    assert x.query_count == 4


def test_basic_shift_of_argmin():
    x = ExplicitOracle([3, 9, 7, 5])  # previous rotated left by 1
    assert basic_lphs(x, 4).value == 0
    y = ExplicitOracle([5, 3, 9, 7])
    assert basic_lphs(y, 4).value - basic_lphs(x, 4).value == 1


def test_basic_tie_breaks_to_smallest_index():
    x = ExplicitOracle([2, 1, 1, 5])
    assert basic_lphs(x, 4).value == 1


def test_basic_rejects_overlong_noncyclic():
    x = SymbolOracle(SEED, n=8, mode="noncyclic")
    with pytest.raises(DomainError):
        basic_lphs(x, 9)


def test_rw_degenerate_step_equals_basic():
    x = SymbolOracle(SEED, n=1 << 16)
    d = 50
    a = rw_lphs(x, L=2, d=d, func_seed=SEED.child(1))
    b = basic_lphs(x, d)
    assert a.value == b.value


def test_rw_deterministic_pair_at_zero_shift():
    base = SymbolOracle(SEED, n=1 << 16)
    pair = ShiftedPair(base, shift=0)
    fs = SEED.child(2)
    a = rw_lphs(pair.base, L=16, d=100, func_seed=fs)
    b = rw_lphs(pair.shifted, L=16, d=100, func_seed=fs)
    assert a.value == b.value


def test_rw_pair_synchronizes_mostly():
    # not a rate test, just that synchronization happens and is exact
    hits = 0
    for t in range(50):
        base = SymbolOracle(SEED.child(3, t), n=1 << 16)
        pair = ShiftedPair(base, shift=16)
        fs = SEED.child(4, t)
        a = rw_lphs(pair.base, L=5, d=400, func_seed=fs)
        b = rw_lphs(pair.shifted, L=5, d=400, func_seed=fs)
        if a.value - b.value == 16:
            hits += 1
    assert hits >= 40


def test_schedule_invariants():
    s = default_schedule(512)
    assert s.total_queries == 512
    assert all(L >= 2 and d >= 1 for L, d in s.stages)
    assert s.jump_before(1) == s.d0
    assert s.jump_before(2) == s.d0 + s.stages[0][0] * s.stages[0][1]
    assert s.max_travel() < 8 * 512 * 512
    with pytest.raises(DomainError):
        IrwSchedule(d0=0, stages=())
    with pytest.raises(DomainError):
        IrwSchedule(d0=4, stages=((1, 4),))


def test_irw_no_walk_stages_is_basic():
    x = SymbolOracle(SEED, n=1 << 16)
    s = IrwSchedule(d0=64, stages=())
    a = irw_lphs(x, s, func_seed=SEED.child(5))
    b = basic_lphs(x, 64)
    assert a.value == b.value


def test_irw_zero_shift_difference_zero():
    base = SymbolOracle(SEED, n=1 << 21)
    pair = ShiftedPair(base, shift=0)
    s = default_schedule(256)
    fs = SEED.child(6)
    a = irw_lphs(pair.base, s, func_seed=fs)
    b = irw_lphs(pair.shifted, s, func_seed=fs)
    assert a.value == b.value


def test_irw_query_budget():
    x = SymbolOracle(SEED, n=1 << 21)
    s = default_schedule(256)
    out = irw_lphs(x, s, func_seed=SEED.child(7))
    assert out.queries_used <= 256
    assert x.query_count <= 256


def test_irw_absorbing_synchronization():
    # if the two traces ever coincide on a physical anchor, the final
    # outputs differ by exactly the shift from that point on
    r = 1
    checked = 0
    for t in range(40):
        base = SymbolOracle(SEED.child(8, t), n=1 << 21)
        pair = ShiftedPair(base, shift=r)
        s = default_schedule(128)
        fs = SEED.child(9, t)
        ta, tb = [], []
        a = irw_lphs(pair.base, s, func_seed=fs, trace=ta)
        b = irw_lphs(pair.shifted, s, func_seed=fs, trace=tb)
        for k in range(len(ta)):
            if ta[k] == tb[k] + r:  # same physical cell
                assert a.value == b.value + r
                checked += 1
                break
    assert checked >= 35


def test_irw_noncyclic_travel_guard():
    x = SymbolOracle(SEED, n=4096, mode="noncyclic")
    s = default_schedule(512)
    assert s.max_travel() >= 4096
    with pytest.raises(DomainError):
        irw_lphs(x, s, func_seed=SEED.child(10))


def test_cyclic_rw_synchronized_pair():
    n = 1 << 12
    base = SymbolOracle(SEED, n=n)
    pair = ShiftedPair(base, shift=0)
    fs = SEED.child(11)
    a = cyclic_rw_lphs(pair.base, m=2, func_seed=fs)
    b = cyclic_rw_lphs(pair.shifted, m=2, func_seed=fs)
    assert a.value == b.value


def test_cyclic_rw_unit_shift():
    # per-round sync probability is a constant (~0.15 for uniform restart
    # distance), so m = 24 rounds push the failure rate well below 1/30
    n = 1 << 12
    hits = 0
    for t in range(30):
        base = SymbolOracle(SEED.child(12, t), n=n)
        pair = ShiftedPair(base, shift=1)
        fs = SEED.child(13, t)
        a = cyclic_rw_lphs(pair.base, m=24, func_seed=fs)
        b = cyclic_rw_lphs(pair.shifted, m=24, func_seed=fs)
        if (a.value - b.value) % n == 1:
            hits += 1
    assert hits == 30


def test_las_vegas_r0_reduces_to_irw_anchor():
    x = SymbolOracle(SEED, n=1 << 21)
    fs = SEED.child(14)
    out = las_vegas_lphs(x, d=128, R=0, func_seed=fs)
    assert not out.bot
    assert out.value is not None


def test_las_vegas_zero_shift_identical():
    base = SymbolOracle(SEED, n=1 << 21)
    pair = ShiftedPair(base, shift=0)
    fs = SEED.child(15)
    a = las_vegas_lphs(pair.base, d=128, R=8, func_seed=fs)
    b = las_vegas_lphs(pair.shifted, d=128, R=8, func_seed=fs)
    assert a.bot == b.bot
    if not a.bot:
        assert a.value == b.value


def test_las_vegas_nonbot_pair_is_exact():
    # every non-bottom pair at shift r <= R lands on the same cell
    r = 5
    both = 0
    for t in range(40):
        base = SymbolOracle(SEED.child(16, t), n=1 << 21)
        pair = ShiftedPair(base, shift=r)
        fs = SEED.child(17, t)
        a = las_vegas_lphs(pair.base, d=128, R=8, func_seed=fs)
        b = las_vegas_lphs(pair.shifted, d=128, R=8, func_seed=fs)
        if not a.bot and not b.bot:
            both += 1
            assert a.value == b.value + r
    assert both >= 30


def test_widen_identity_grouping():
    x = SymbolOracle(SEED, n=256, b=32)
    h = widen_alphabet(lambda o: basic_lphs(o, 16), r=1)
    assert h(x).value == basic_lphs(x, 16).value


def test_widen_floor_division():
    wide = ExplicitOracle([9, 9, 9, 9], b=8)
    # inner returns narrow-index 7 by always picking the last of 8 chunks
    h = widen_alphabet(lambda o: HashOutcome1D(value=7, queries_used=0), r=4)
    assert h(wide).value == 1


def test_widen_shift_relation():
    # one wide-symbol shift equals r narrow shifts: outputs differ by 1
    r = 4
    base = SymbolOracle(SEED, n=1 << 12, b=64)
    pair = ShiftedPair(base, shift=1)
    h = widen_alphabet(lambda o: basic_lphs(o, 64), r=r)
    a = h(pair.base)
    b = h(pair.shifted)
    # the underlying narrow argmin shifts by r, so wide outputs differ by 1
    # unless the argmin fell off the shared window (rare at this size)
    assert a.value - b.value in (0, 1)


def test_narrow_determinism_and_count():
    x = SymbolOracle(SEED, n=1 << 16, b=1)
    h = narrow_alphabet(lambda o, func_seed: basic_lphs(o, 32), k=24)
    a = h(x, func_seed=SEED.child(18))
    b = h(x, func_seed=SEED.child(18))
    assert a.value == b.value
    assert a.queries_used == 32 * 24


def test_narrow_window_exits_range():
    x = SymbolOracle(SEED, n=40, b=1, mode="noncyclic")
    h = narrow_alphabet(lambda o, func_seed: basic_lphs(o, 32), k=24)
    with pytest.raises(DomainError):
        h(x, func_seed=SEED.child(19))


def test_union_bound_micro():
    # coarse: failure rate at shift 3 is within ~3x of 3 * rate at shift 1
    d, n, trials = 32, 1 << 12, 3000
    fails = {1: 0, 3: 0}
    for r in (1, 3):
        for t in range(trials):
            base = SymbolOracle(SEED.child(20, r, t), n=n)
            pair = ShiftedPair(base, shift=r)
            a = basic_lphs(pair.base, d)
            b = basic_lphs(pair.shifted, d)
            if (a.value - b.value) % n != r:
                fails[r] += 1
    assert fails[3] <= 3 * 1.5 * fails[1] + 3 * (fails[1] ** 0.5 + 1)


def test_cyclic_noncyclic_agreement():
    # same seed, walk inside [0, n): bit-identical outcomes
    s = default_schedule(64)
    seed = SEED.child(21)
    xc = SymbolOracle(seed, n=1 << 16, mode="cyclic")
    xn = SymbolOracle(seed, n=1 << 16, mode="noncyclic")
    fs = SEED.child(22)
    assert irw_lphs(xc, s, func_seed=fs).value == irw_lphs(xn, s, func_seed=fs).value
