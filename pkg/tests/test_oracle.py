"""Tests for the deterministic randomness layer."""

import numpy as np
import pytest
from scipy import stats

from lphs.oracle import (
    DomainError,
    ExplicitOracle,
    Seed,
    ShiftedPair,
    SymbolOracle,
    absorb,
    absorb_vec,
    bounded,
    default_symbol_bits,
    mix64,
    mix64_vec,
    random_subset,
    step_fn,
)

SEED = Seed(master_key=0x0123456789ABCDEF_FEDCBA9876543210, stream_id=7)


def test_mix64_vec_matches_scalar():
    xs = np.array([0, 1, 2, 12345, 2**63, 2**64 - 1], dtype=np.uint64)
    got = mix64_vec(xs)
    want = [mix64(int(x)) for x in xs]
    assert got.tolist() == want


def test_absorb_vec_matches_scalar():
    xs = np.arange(1000, dtype=np.uint64)
    got = absorb_vec(SEED.lane, xs)
    want = [absorb(SEED.lane, int(x)) for x in xs[:50]]
    assert got[:50].tolist() == want


def test_symbol_determinism():
    x = SymbolOracle(SEED, n=1 << 20, b=32)
    assert x.symbol_at(0) == x.symbol_at(0)
    assert x.symbol_at(12345) == x.symbol_at(12345)


def test_cyclic_reduction():
    x = SymbolOracle(SEED, n=8, b=16, mode="cyclic")
    assert x.symbol_at(10) == x.symbol_at(2)
    assert x.symbol_at(-1) == x.symbol_at(7)


def test_noncyclic_rejects_out_of_range():
    x = SymbolOracle(SEED, n=8, b=16, mode="noncyclic")
    with pytest.raises(DomainError):
        x.symbol_at(8)
    with pytest.raises(DomainError):
        x.symbol_at(-1)


def test_query_count():
    x = SymbolOracle(SEED, n=100, b=8)
    for i in range(17):
        x.symbol_at(i)
    assert x.query_count == 17


def test_chi_squared_uniformity_b8():
    # 65536 draws over 256 bins must look uniform.
    x = SymbolOracle(SEED, n=1 << 40, b=8)
    draws = (x.seed.values_at(np.arange(65536, dtype=np.uint64))
             & np.uint64(0xFF)).astype(np.int64)
    counts = np.bincount(draws, minlength=256)
    _, p = stats.chisquare(counts)
    assert p > 0.001


def test_distinct_streams_uncorrelated():
    a = Seed(123, 1).values_at(np.arange(100_000, dtype=np.uint64))
    b = Seed(123, 2).values_at(np.arange(100_000, dtype=np.uint64))
    rho = np.corrcoef(a.astype(np.float64), b.astype(np.float64))[0, 1]
    assert abs(rho) < 0.02


def test_shift_consistency_cyclic_exhaustive():
    n = 1 << 12
    base = SymbolOracle(SEED, n=n, b=24, mode="cyclic")
    pair = ShiftedPair(base, shift=5)
    for i in range(n):
        assert pair.shifted.peek(i) == base.peek((i + 5) % n)


def test_shift_consistency_noncyclic():
    n = 256
    r = 9
    base = SymbolOracle(SEED, n=n, b=24, mode="noncyclic")
    pair = ShiftedPair(base, shift=r, fresh_seed=SEED.child(99))
    for i in range(n - r):
        assert pair.shifted.peek(i) == base.peek(i + r)
    # suffix symbols exist, are deterministic, and differ from the base tail
    tail = [pair.shifted.peek(i) for i in range(n - r, n)]
    assert tail == [pair.shifted.peek(i) for i in range(n - r, n)]


def test_shifted_pair_2d():
    n = 64
    base = SymbolOracle(SEED, n=n, b=16, mode="cyclic", dims=2)
    pair = ShiftedPair(base, shift=(1, 3))
    for i in range(0, n, 7):
        for j in range(0, n, 5):
            assert pair.shifted.peek(i, j) == base.peek((i + 1) % n, (j + 3) % n)


def test_step_fn_singleton_and_determinism():
    assert step_fn(SEED, 1, 1, 42) == 1
    assert step_fn(SEED, 3, 17, 42) == step_fn(SEED, 3, 17, 42)
    with pytest.raises(DomainError):
        step_fn(SEED, 5, 4, 0)


def test_step_fn_uniform_over_1_16():
    # 1e5 draws over [1, 16]: every value within 5 sigma of the binomial mean.
    draws = np.array([step_fn(SEED, 1, 16, s) for s in range(100_000)])
    counts = np.bincount(draws, minlength=17)[1:]
    p = 1 / 16
    mean = 100_000 * p
    sigma = np.sqrt(100_000 * p * (1 - p))
    assert np.all(np.abs(counts - mean) <= 5 * sigma)


def test_random_subset_full_universe():
    assert random_subset(SEED, 5, 5).tolist() == [0, 1, 2, 3, 4]


def test_random_subset_deterministic_singleton():
    a = random_subset(SEED, 100, 1)
    b = random_subset(SEED, 100, 1)
    assert a.tolist() == b.tolist()
    with pytest.raises(DomainError):
        random_subset(SEED, 3, 4)


def test_random_subset_inclusion_frequency():
    # W=1000, m=10, 1e4 seeds: per-element inclusion within 5 sigma of 1%.
    W, m, reps = 1000, 10, 10_000
    counts = np.zeros(W, dtype=np.int64)
    for t in range(reps):
        counts[random_subset(SEED.child(t), W, m)] += 1
    p = m / W
    mean = reps * p
    sigma = np.sqrt(reps * p * (1 - p))
    assert np.all(np.abs(counts - mean) <= 5 * sigma)


def test_default_symbol_bits():
    assert default_symbol_bits(2**20) == 60
    assert default_symbol_bits(2**30) == 64
    assert default_symbol_bits(16) == 12


def test_bounded_range():
    for u in [0, 2**63, 2**64 - 1]:
        assert 3 <= bounded(u, 3, 9) <= 9


def test_explicit_oracle():
    x = ExplicitOracle([5, 3, 9, 7], mode="cyclic")
    assert x.symbol_at(1) == 3
    assert x.symbol_at(5) == 3
    y = ExplicitOracle([[4, 2], [3, 1]])
    assert y.symbol_at(1, 1) == 1
