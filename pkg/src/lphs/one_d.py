"""One-dimensional shift-locality hash algorithms.

All evaluators here are pure functions of (input oracle, shared function
seed).  Two parties evaluating correlated inputs must pass the same
``func_seed``; their outputs then differ by exactly the shift whenever
the internal walks synchronize.

These are the readable reference implementations.  The Monte Carlo
harness uses the numba kernels in ``lphs.batch``, which are checked
against these functions for bit-exact agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .oracle import (
    DomainError,
    OffsetView,
    Seed,
    _OracleBase,
    absorb,
    bounded,
)

# stream tags for deriving independent shared-function sub-streams
_TAG_STAGE = 0x57A6E
_TAG_RELABEL = 0x5E1AB
_TAG_JUMP = 0x10B1
_TAG_WINDOW = 0xF00D


@dataclass
class HashOutcome1D:
    """Result of a 1D evaluation: a signed position, or bottom (Las Vegas)."""

    value: int | None
    queries_used: int
    bot: bool = False

    def __post_init__(self):
        if self.bot and self.value is not None:
            raise ValueError("bottom outcome carries no value")


@dataclass(frozen=True)
class IrwSchedule:
    """Parameters of an iterated random walk: a min-scan stage of d0
    queries followed by K walk stages (L_i, d_i).

    The jump applied before walk stage k is J_k = sum_{i<k} d_i*L_i with
    the min-scan counted as stage 0 of step length 1, which moves both
    parties past every previously queried cell.
    """

    d0: int
    stages: tuple[tuple[int, int], ...]  # (L_i, d_i), i = 1..K

    def __post_init__(self):
        if self.d0 < 1:
            raise DomainError("d0 must be >= 1")
        for L, d in self.stages:
            if L < 2:
                raise DomainError("walk stage needs L >= 2")
            if d < 1:
                raise DomainError("walk stage needs d >= 1")

    @property
    def K(self) -> int:
        return len(self.stages)

    @property
    def total_queries(self) -> int:
        return self.d0 + sum(d for _, d in self.stages)

    def jump_before(self, k: int) -> int:
        """Deterministic forward jump applied before walk stage k (1-based)."""
        j = self.d0
        for L, d in self.stages[: k - 1]:
            j += L * d
        return j

    def max_travel(self) -> int:
        """Largest index any evaluation with this schedule can read."""
        pos = self.d0 - 1
        for k, (L, d) in enumerate(self.stages, start=1):
            pos += self.jump_before(k) + (L - 1) * (d - 1)
        return pos


def default_schedule(d: int) -> IrwSchedule:
    """The package's default iterated-walk parameter set for budget d.

    K = max(1, ceil(log2 log2 d)) stages; half the budget goes to the
    min-scan, the rest is split evenly; step lengths follow
    L_1 = ceil(sqrt(d0)), L_{i+1} = ceil(sqrt(L_i * d_i)), i.e. each walk
    step length tracks the square root of the expected inter-party
    distance left behind by the previous stage.
    """
    if d < 4:
        raise DomainError("iterated walk needs d >= 4")
    K = max(1, math.ceil(math.log2(max(2.0, math.log2(d)))))
    d0 = d // 2
    rem = d - d0
    per = rem // K
    if per < 1:
        K = rem
        per = 1
    counts = [per] * K
    counts[-1] += rem - per * K
    stages = []
    L = max(2, math.isqrt(d0 - 1) + 1)  # ceil(sqrt(d0))
    for i in range(K):
        stages.append((L, counts[i]))
        prod = L * counts[i]
        L = max(2, math.isqrt(prod - 1) + 1)
    return IrwSchedule(d0=d0, stages=tuple(stages))


def _check_travel(x, travel: int, what: str) -> None:
    if x.cyclic:
        # guarantees below n/2 keep the wrap-free analysis intact; the
        # harness presets use the stronger n >= 8*d^2 rule.
        if x.n < 2 * (travel + 1):
            raise DomainError(
                f"{what}: cyclic input length {x.n} below 2*(max travel {travel} + 1)")
    else:
        if travel >= x.n:
            raise DomainError(
                f"{what}: walk can reach index {travel} outside [0, {x.n})")


def basic_lphs(x, d: int) -> HashOutcome1D:
    """Min-scan hash: the index of the smallest of x[0..d); ties go to the
    smallest index.  Exactly d queries."""
    if d < 1:
        raise DomainError("d must be >= 1")
    if not x.cyclic and d > x.n:
        raise DomainError(f"d={d} exceeds non-cyclic length {x.n}")
    best = None
    arg = 0
    for i in range(d):
        t = x.symbol_at(i)
        if best is None or t < best:
            best = t
            arg = i
    return HashOutcome1D(value=arg, queries_used=d)


def rw_lphs(x, L: int, d: int, start: int = 0, *,
            func_seed: Seed) -> HashOutcome1D:
    """Forward pseudo-random walk of d steps with step sizes in [1, L-1].

    Steps are a shared function of the symbol under the walker, so two
    walkers that ever land on the same cell coincide forever.  Returns
    the index (absolute, in the input's coordinates) of the smallest
    symbol seen.
    """
    if L < 2 or d < 1:
        raise DomainError("need L >= 2 and d >= 1")
    if not x.cyclic and start + (L - 1) * d >= x.n:
        raise DomainError("walk may exit the string in non-cyclic mode")
    lane = func_seed.lane
    j = start
    best = None
    j_min = start
    for _ in range(d):
        t = x.symbol_at(j % x.n if x.cyclic else j)
        if best is None or t < best:
            best = t
            j_min = j
        j += bounded(absorb(lane, t), 1, L - 1)
    return HashOutcome1D(value=j_min, queries_used=d)


def irw_lphs(x, schedule: IrwSchedule, *, func_seed: Seed,
             trace: list | None = None) -> HashOutcome1D:
    """Iterated random walk: min-scan, then K walk stages with shrinking
    relative step lengths, each preceded by a deterministic jump and an
    additive input re-anchoring.

    The returned value is the absolute index of the final anchor (reduce
    mod n for cyclic comparisons).  ``trace``, if given, collects the
    absolute anchor after the scan and after each walk stage.
    """
    travel = schedule.max_travel()
    _check_travel(x, travel, "iterated walk")
    queries = 0

    scan = basic_lphs(x, schedule.d0)
    queries += scan.queries_used
    j = scan.value
    if trace is not None:
        trace.append(j)
    p = 0
    for k, (L, dk) in enumerate(schedule.stages, start=1):
        j += schedule.jump_before(k)
        p += j
        view = OffsetView(x, p)
        stage_seed = func_seed.child(_TAG_STAGE, k)
        before = view.query_count
        out = rw_lphs(view, L, dk, start=0, func_seed=stage_seed)
        queries += view.query_count - before
        j = out.value
        if trace is not None:
            trace.append(p + j)
    return HashOutcome1D(value=p + j, queries_used=queries)


def cyclic_rw_lphs(x, m: int, *, func_seed: Seed) -> HashOutcome1D:
    """Cyclic hash with negligible error: m rounds of a full-length
    random walk (L = d = ceil(sqrt(n))), each on freshly relabeled
    symbols, each followed by a pseudo-random jump keyed by the landing
    symbol.  Returns the final landing position mod n.

    Each round that starts unsynchronized gives the two parties a fresh,
    independent chance to land on a common cell, so the residual error
    decays geometrically in m.
    """
    if not x.cyclic:
        raise DomainError("cyclic walk hash needs a cyclic input")
    if m < 1:
        raise DomainError("need at least one round")
    n = x.n
    w = math.isqrt(n)
    if w < 2:
        raise DomainError("n too small for a meaningful walk")
    L = max(2, w)
    queries = 0
    pos = 0
    for rnd in range(1, m + 1):
        relabel_lane = func_seed.child(_TAG_RELABEL, rnd).lane
        step_lane = func_seed.child(_TAG_STAGE, rnd).lane
        jump_lane = func_seed.child(_TAG_JUMP, rnd).lane
        j = pos
        best = None
        j_min = pos
        raw_min = 0
        for _ in range(w):
            raw = x.symbol_at(j % n)
            queries += 1
            t = absorb(relabel_lane, raw)
            if best is None or t < best:
                best = t
                j_min = j
                raw_min = raw
            j += bounded(absorb(step_lane, raw), 1, L - 1)
        if rnd < m:
            pos = (j_min + bounded(absorb(jump_lane, raw_min), 0, n - 1)) % n
        else:
            pos = j_min % n
    return HashOutcome1D(value=pos, queries_used=queries)


def las_vegas_lphs(x, d: int, R: int, *, func_seed: Seed,
                   scan_window: int | None = None) -> HashOutcome1D:
    """Shift-bounded Las Vegas hash for shifts up to R.

    Runs the min-scan on every window [r, r+w) for r in [0, R] (sharing
    the R+w+1 queried symbols), gathers the distinct absolute anchors,
    then runs the iterated walk from each anchor under one shared
    randomness stream.  If every walk lands on the same cell, that cell's
    absolute index is the output; otherwise the outcome is bottom.

    Against a counterpart within shift r <= R, the two anchor sets share
    the windows at shifts [r, R], so non-bottom outcomes on both sides
    always land on the same physical cell.
    """
    if R < 0:
        raise DomainError("R must be >= 0")
    w = d if scan_window is None else scan_window
    if w < 1:
        raise DomainError("scan window must be >= 1")
    schedule = default_schedule(d)
    travel = schedule.max_travel()
    if not x.cyclic and R + w + travel >= x.n:
        raise DomainError("scan plus walk may exit the string in non-cyclic mode")

    # Sliding min-scan over windows [r, r+w), r = 0..R; anchors are
    # absolute argmins with ties to the smallest index, so the anchor
    # sequence is non-decreasing in r.
    n = x.n
    symbols = [x.symbol_at(i % n if x.cyclic else i) for i in range(R + w)]
    queries = R + w
    anchors = []
    for r in range(R + 1):
        best = None
        arg = r
        for i in range(r, r + w):
            if best is None or symbols[i] < best:
                best = symbols[i]
                arg = i
        if not anchors or anchors[-1] != arg:
            anchors.append(arg)

    landing = None
    for a in anchors:
        view = OffsetView(x, a)
        before = x.query_count
        out = irw_lphs(view, schedule, func_seed=func_seed)
        queries += x.query_count - before
        cell = a + out.value
        if landing is None:
            landing = cell
        elif cell != landing:
            return HashOutcome1D(value=None, queries_used=queries, bot=True)
    return HashOutcome1D(value=landing, queries_used=queries)


class _NarrowFromWide(_OracleBase):
    """View a wide-alphabet oracle as its underlying narrow string.

    Wide symbol t is the big-endian concatenation of narrow symbols
    r*t .. r*t + r - 1, so narrow index i lives in chunk i % r of wide
    symbol i // r.  One narrow query costs one wide query.
    """

    def __init__(self, wide, r: int, b_narrow: int):
        self.wide = wide
        self.r = r
        self.b = b_narrow
        self.n = wide.n * r
        self.mode = wide.mode
        self.dims = 1
        self.query_count = 0
        self._mask = (1 << b_narrow) - 1

    def peek(self, *index) -> int:
        (i,) = self._unpack(index)
        i = self._reduce(i)
        t, c = divmod(i, self.r)
        w = self.wide.peek(t)
        shift = self.b * (self.r - 1 - c)
        return (w >> shift) & self._mask


def widen_alphabet(inner, r: int):
    """Lift a hash over n narrow symbols to one over n/r symbols of r-fold
    width: evaluate on the ungrouped string, floor-divide the output by r.

    ``inner`` maps an oracle to HashOutcome1D.  The wrapped hash makes the
    same number of queries, each answered by one wide-symbol read.
    """
    if r < 1:
        raise DomainError("grouping factor must be >= 1")

    def wrapped(wide, **kw) -> HashOutcome1D:
        b_narrow = wide.b // r
        if b_narrow * r != wide.b:
            raise DomainError("wide symbol width must be divisible by r")
        view = _NarrowFromWide(wide, r, b_narrow) if r > 1 else wide
        out = inner(view, **kw)
        if out.bot:
            return out
        return HashOutcome1D(value=out.value // r, queries_used=out.queries_used,
                             bot=False)

    return wrapped


class _WideFromNarrow(_OracleBase):
    """View a narrow-alphabet oracle as wide symbols, each the shared-hash
    of a k-window of narrow symbols.  One wide query costs k narrow
    queries."""

    def __init__(self, narrow, k: int, f_seed: Seed):
        self.narrow = narrow
        self.k = k
        self.b = 64
        self.n = narrow.n
        self.mode = narrow.mode
        self.dims = 1
        self.query_count = 0
        self._lane = f_seed.lane

    def peek(self, *index) -> int:
        (i,) = self._unpack(index)
        if not self.cyclic and i + self.k > self.n:
            raise DomainError("window exits the string in non-cyclic mode")
        state = self._lane
        for t in range(self.k):
            state = absorb(state, self.narrow.peek((i + t) % self.n))
        return state

    def symbol_at(self, *index) -> int:
        value = self.peek(*index)
        self.query_count += self.k
        return value


def narrow_alphabet(inner, k: int):
    """Run a wide-alphabet hash over a narrow string by answering each
    wide query with a shared random function of a k-window of narrow
    symbols.  Query count is multiplied by k; the extra error is the
    window-collision term, about 4*d^2/2^(b*k).
    """
    if k < 1:
        raise DomainError("window length must be >= 1")

    def wrapped(narrow, *, func_seed: Seed, **kw) -> HashOutcome1D:
        view = _WideFromNarrow(narrow, k, func_seed.child(_TAG_WINDOW))
        out = inner(view, func_seed=func_seed, **kw)
        return HashOutcome1D(value=out.value, queries_used=view.query_count,
                             bot=out.bot)

    return wrapped
