"""Deterministic keyed randomness shared by both sides of a hash evaluation.

Everything random in this package (lazy input strings, step functions,
relabeling functions, random subsets, group labels) is derived from a
``Seed`` through one keyed 64-bit mixing function.  Two evaluations that
hold the same seed see exactly the same "random" world; evaluations with
distinct stream ids see empirically independent worlds.

The mixer is the SplitMix64 finalizer chained through an absorb step.  It
is not a cryptographic PRF; it only needs uniform marginals and strong
avalanche, which the statistical tests in the suite check directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_SEED_INIT = 0x243F6A8885A308D3  # pi digits, nothing-up-my-sleeve
_CHILD_INIT = 0x452821E638D01377


class DomainError(ValueError):
    """Raised when an index or parameter leaves its documented domain."""


def mix64(z: int) -> int:
    """SplitMix64 finalizer on one 64-bit word."""
    z &= _M64
    z = (z ^ (z >> 30)) * _MIX1 & _M64
    z = (z ^ (z >> 27)) * _MIX2 & _M64
    return z ^ (z >> 31)


def absorb(state: int, word: int) -> int:
    """Mix one 64-bit word into a running 64-bit state."""
    return mix64(state ^ mix64((word + _GOLDEN) & _M64))


def umulhi(a: int, b: int) -> int:
    """High 64 bits of the 128-bit product a*b (a, b are 64-bit)."""
    return ((a & _M64) * (b & _M64)) >> 64


def bounded(u: int, lo: int, hi: int) -> int:
    """Map a uniform 64-bit value into [lo, hi] by multiply-shift.

    Rejection-free; the bias is at most (hi-lo+1)/2^64, far below the
    resolution of any test in this package.
    """
    if hi < lo:
        raise DomainError(f"empty range [{lo}, {hi}]")
    return lo + umulhi(u, hi - lo + 1)


# Vectorized mirrors of the scalar mixer.  They operate on uint64 arrays
# and stay bit-identical to the scalar path (tested).

def mix64_vec(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def absorb_vec(state, words: np.ndarray) -> np.ndarray:
    w = words.astype(np.uint64, copy=False) + np.uint64(_GOLDEN)
    return mix64_vec(np.uint64(state) ^ mix64_vec(w))


@dataclass(frozen=True)
class Seed:
    """A (master_key, stream_id) pair naming one deterministic random function.

    master_key is an opaque 128-bit value; stream_id is a 64-bit label.
    Distinct stream ids give streams that pass the uniformity and
    independence checks in the test suite.
    """

    master_key: int
    stream_id: int = 0

    def __post_init__(self):
        object.__setattr__(self, "master_key", self.master_key & ((1 << 128) - 1))
        object.__setattr__(self, "stream_id", self.stream_id & _M64)

    @property
    def lane(self) -> int:
        """The 64-bit lane key all values of this stream are derived from."""
        k_lo = self.master_key & _M64
        k_hi = self.master_key >> 64
        state = absorb(_SEED_INIT, k_lo)
        state = absorb(state, k_hi)
        return absorb(state, self.stream_id)

    def child(self, *words: int) -> "Seed":
        """Derive a sub-stream; same master key, new stream id."""
        state = absorb(_CHILD_INIT, self.stream_id)
        for w in words:
            state = absorb(state, w)
        return Seed(self.master_key, state)

    def value_at(self, index: int) -> int:
        """The 64-bit stream value at an integer index."""
        return absorb(self.lane, index)

    def values_at(self, indices: np.ndarray) -> np.ndarray:
        return absorb_vec(self.lane, indices)


def pair_index(i: int, j: int) -> int:
    """Pack a 2D index into one word; both coordinates must fit in 32 bits."""
    return ((i & 0xFFFFFFFF) << 32) | (j & 0xFFFFFFFF)


def default_symbol_bits(n: int) -> int:
    """Default symbol width: min(64, 3*ceil(log2 n)).

    One machine word per symbol; at this width all symbols of a
    length-n string are distinct except with probability <= 1/n.
    """
    return min(64, 3 * max(1, (n - 1).bit_length()))


class _OracleBase:
    """Common index handling and query accounting for oracle-like objects.

    ``peek`` reads a symbol without counting; ``symbol_at`` counts the
    read against this object's query_count.  Symbol values are immutable;
    the counter is the only mutable state and exists for tests.
    """

    n: int
    b: int
    mode: str
    dims: int

    @property
    def cyclic(self) -> bool:
        return self.mode == "cyclic"

    def _unpack(self, index):
        if len(index) == 1 and isinstance(index[0], tuple):
            index = index[0]
        if len(index) != self.dims:
            raise DomainError(f"expected {self.dims} coordinates, got {len(index)}")
        return index

    def _reduce(self, i: int) -> int:
        if self.cyclic:
            return i % self.n
        if not 0 <= i < self.n:
            raise DomainError(f"index {i} outside [0, {self.n}) in non-cyclic mode")
        return i

    def symbol_at(self, *index) -> int:
        """Read one symbol; index is i (1D) or i, j (2D)."""
        value = self.peek(*index)
        self.query_count += 1
        return value

    def peek(self, *index) -> int:  # pragma: no cover - overridden
        raise NotImplementedError


class SymbolOracle(_OracleBase):
    """A lazy, deterministic string of n b-bit symbols (1D or 2D).

    symbol_at(i) is a pure function of (seed, i); nothing is materialized,
    so n can be as large as 2^40.  Cyclic mode reduces indices modulo n
    (per axis in 2D); non-cyclic mode rejects out-of-range indices.
    """

    def __init__(self, seed: Seed, n: int, b: int | None = None,
                 mode: str = "cyclic", dims: int = 1):
        if mode not in ("cyclic", "noncyclic"):
            raise DomainError(f"unknown mode {mode!r}")
        if dims not in (1, 2):
            raise DomainError("dims must be 1 or 2")
        if n < 1 or n > 1 << 40:
            raise DomainError("n out of range")
        b = default_symbol_bits(n) if b is None else b
        if not 1 <= b <= 64:
            raise DomainError("symbol width must be in [1, 64]")
        self.seed = seed
        self.n = n
        self.b = b
        self.mode = mode
        self.dims = dims
        self.query_count = 0
        self._lane = seed.lane
        self._mask = _M64 if b == 64 else (1 << b) - 1

    def peek(self, *index) -> int:
        index = self._unpack(index)
        if self.dims == 1:
            key = self._reduce(index[0])
        else:
            key = pair_index(self._reduce(index[0]), self._reduce(index[1]))
        return absorb(self._lane, key) & self._mask


class ExplicitOracle(_OracleBase):
    """Oracle over explicitly given symbols; used by tests and tiny examples."""

    def __init__(self, values, mode: str = "cyclic", b: int = 64):
        arr = np.asarray(values, dtype=np.uint64)
        self.dims = arr.ndim
        if self.dims not in (1, 2):
            raise DomainError("values must be a 1D or 2D array")
        if self.dims == 2 and arr.shape[0] != arr.shape[1]:
            raise DomainError("2D explicit oracle must be square")
        self.values = arr
        self.n = arr.shape[0]
        self.b = b
        self.mode = mode
        self.query_count = 0

    def peek(self, *index) -> int:
        index = self._unpack(index)
        if self.dims == 1:
            return int(self.values[self._reduce(index[0])])
        return int(self.values[self._reduce(index[0]), self._reduce(index[1])])


class ShiftedView(_OracleBase):
    """The right-hand party's view of a shifted input.

    Cyclic: view[i] = base[i + r mod n] (per axis in 2D).
    Non-cyclic: view[i] = base[i + r] inside the overlap window and a
    fresh uniform symbol beyond it, drawn from a dedicated fresh seed so
    the two parties never observe the suffix identically by accident.
    """

    def __init__(self, base, shift, fresh_seed: Seed | None = None):
        self.base = base
        self.dims = base.dims
        if self.dims == 1:
            shift = (int(shift),)
        else:
            shift = (int(shift[0]), int(shift[1]))
        if any(r < 0 for r in shift):
            raise DomainError("shift components must be >= 0")
        if not base.cyclic and fresh_seed is None:
            raise DomainError("non-cyclic shifted view needs a fresh seed")
        self.shift = shift
        self.n = base.n
        self.b = base.b
        self.mode = base.mode
        self.query_count = 0
        self._fresh_lane = fresh_seed.lane if fresh_seed is not None else None
        self._mask = _M64 if base.b == 64 else (1 << base.b) - 1

    def peek(self, *index) -> int:
        index = self._unpack(index)
        n = self.n
        if self.cyclic:
            moved = tuple((index[k] + self.shift[k]) % n for k in range(self.dims))
            return self.base.peek(*moved)
        for k in range(self.dims):
            if not 0 <= index[k] < n:
                raise DomainError(f"index {index[k]} outside [0, {n}) in non-cyclic mode")
        moved = tuple(index[k] + self.shift[k] for k in range(self.dims))
        if all(m < n for m in moved):
            return self.base.peek(*moved)
        key = moved[0] if self.dims == 1 else pair_index(moved[0], moved[1])
        return absorb(self._fresh_lane, key) & self._mask


@dataclass
class ShiftedPair:
    """A correlated input pair: the base oracle and its shifted counterpart."""

    base: SymbolOracle
    shift: int | tuple
    fresh_seed: Seed | None = None

    def __post_init__(self):
        self.shifted = ShiftedView(self.base, self.shift, self.fresh_seed)


class OffsetView(_OracleBase):
    """Additive re-anchoring of an oracle: view[i] = base[i + offset].

    Realizes "shift the input itself" steps as an O(1) index offset,
    never a data copy.  In non-cyclic mode offset indices must stay in
    range.  Reads count against the underlying oracle.
    """

    def __init__(self, base, offset: int):
        if base.dims != 1:
            raise DomainError("offset views are one-dimensional")
        self.base = base
        self.offset = offset
        self.n = base.n
        self.b = base.b
        self.mode = base.mode
        self.dims = 1

    @property
    def query_count(self) -> int:
        return self.base.query_count

    def peek(self, *index) -> int:
        (i,) = self._unpack(index)
        return self.base.peek(i + self.offset)

    def symbol_at(self, *index) -> int:
        (i,) = self._unpack(index)
        return self.base.symbol_at(i + self.offset)


def step_fn(seed: Seed, range_lo: int, range_hi: int, symbol: int) -> int:
    """Deterministic step function: map a symbol to a step in [lo, hi].

    Marginally uniform for uniform symbols.  Both parties share the seed,
    so equal symbols always produce equal steps.
    """
    if range_hi < range_lo:
        raise DomainError(f"empty range [{range_lo}, {range_hi}]")
    return bounded(seed.value_at(symbol), range_lo, range_hi)


def random_subset(seed: Seed, universe: int, size: int) -> np.ndarray:
    """A sorted uniform random size-subset of [0, universe), deterministic.

    Indices are ranked by their stream value and the smallest `size`
    ranks win; 64-bit ranks make ties vanishingly unlikely.
    """
    if size > universe:
        raise DomainError(f"subset size {size} exceeds universe {universe}")
    if size < 0 or universe < 1:
        raise DomainError("need size >= 0 and universe >= 1")
    ranks = seed.values_at(np.arange(universe, dtype=np.uint64))
    if size == universe:
        return np.arange(universe, dtype=np.int64)
    picked = np.argpartition(ranks, size)[:size]
    return np.sort(picked).astype(np.int64)
