"""Numba kernels for high-volume correlated-trial evaluation.

Every kernel reimplements the corresponding reference algorithm from
``lphs.one_d`` / ``lphs.two_d`` with the exact same keyed mixing and
seed-derivation chain, so outputs are bit-identical to the scalar path
(checked by tests/test_batch_equivalence.py).  Trials are independent;
``prange`` parallelism cannot change any output.

All grid geometry (box sides, step bounds, stage offsets) is computed
host-side with exact integer arithmetic and passed in as parameters; the
kernels only do walk arithmetic.

Symbol backends are selected by an integer code so one compiled engine
serves several oracle flavors:

  1D code 0: hashed lazy string (SymbolOracle semantics, incl. shifted
             views with fresh non-cyclic suffixes)
  1D code 1: 64-bit windows of a packed bit corpus (binary alphabet
             narrowing with window length 64)
  1D code 2: random-subset tiling of a packed bit string (worst-case)
  2D code 0: hashed lazy grid, cyclic per-axis arithmetic
  2D code 1: generic-group labels at exponent v + i*w1 + j*w2 mod 2^61-1
"""

import numpy as np
from numba import njit, prange

U64 = np.uint64

_M64 = U64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_CHILD_INIT = U64(0x452821E638D01377)
_C30 = U64(30)
_C27 = U64(27)
_C31 = U64(31)
_C32 = U64(32)
_MASK32 = U64(0xFFFFFFFF)
_MASK31 = U64(0x7FFFFFFF)
_MASK30 = U64(0x3FFFFFFF)
_M61 = U64(0x1FFFFFFFFFFFFFFF)
_C61 = U64(61)

TAG_STAGE = 0x57A6E
TAG_RELABEL = 0x5E1AB
TAG_JUMP = 0x10B1

_FAST = {"cache": True, "nogil": True}


@njit(inline="always")
def _mix64(z):
    z ^= z >> _C30
    z *= _MIX1
    z ^= z >> _C27
    z *= _MIX2
    z ^= z >> _C31
    return z


@njit(inline="always")
def _absorb(state, word):
    return _mix64(state ^ _mix64(word + _GOLDEN))


@njit(inline="always")
def _child2(stream, tag, word):
    """Stream id of Seed.child(tag, word)."""
    return _absorb(_absorb(_absorb(_CHILD_INIT, stream), U64(tag)), word)


@njit(inline="always")
def _umulhi(a, b):
    a_lo = a & _MASK32
    a_hi = a >> _C32
    b_lo = b & _MASK32
    b_hi = b >> _C32
    t = a_lo * b_lo
    t1 = a_hi * b_lo + (t >> _C32)
    t2 = a_lo * b_hi + (t1 & _MASK32)
    return a_hi * b_hi + (t1 >> _C32) + (t2 >> _C32)


@njit(inline="always")
def _bounded(u, lo, span):
    """lo + uniform value in [0, span)."""
    return lo + np.int64(_umulhi(u, U64(span)))


@njit(inline="always")
def _fold61(x):
    return (x & _M61) + (x >> _C61)


@njit(inline="always")
def _mod61(x):
    x = _fold61(_fold61(x))
    if x >= _M61:
        x -= _M61
    return x


@njit(inline="always")
def _mulmod61(a, b):
    """a*b mod 2^61-1 for a, b < 2^61, via 31-bit limbs."""
    a1 = a >> _C31
    a0 = a & _MASK31
    b1 = b >> _C31
    b0 = b & _MASK31
    hi = a1 * b1             # weight 2^62 = 2 mod M61
    mid = a1 * b0 + a0 * b1  # weight 2^31
    lo = a0 * b0
    m1 = mid >> _C30         # weight 2^61 = 1
    m0 = mid & _MASK30       # weight 2^31
    acc = _mod61(hi << U64(1))
    acc += m1 + _mod61(m0 << _C31)
    acc += _mod61(lo)
    return _mod61(acc)


# ---------------------------------------------------------------------------
# 1D engines


@njit(inline="always")
def _bits64(words, pos):
    w = words[pos >> 6] >> U64(pos & 63)
    rem = pos & 63
    if rem:
        w |= words[(pos >> 6) + 1] << U64(64 - rem)
    return w


@njit(inline="always")
def _sym1d(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
           t, i):
    if code == 0:
        phys = i + r[t]
        if cyclic:
            phys %= n
        elif phys >= n:
            return _absorb(lane_fx[t], U64(i)) & bmask
        return _absorb(lane_in[t], U64(phys)) & bmask
    if code == 1:
        pos = wofs[t] + i + r[t]
        return _absorb(lane_fx[t], _bits64(words, pos))
    # code 2: tiled bits
    phys = i + r[t]
    if cyclic:
        phys %= n
    state = lane_fx[t]
    acc = U64(0)
    cnt = 0
    for k in range(tiles.shape[1]):
        pos = phys + tiles[t, k]
        if cyclic:
            pos %= n
        bit = (words[pos >> 6] >> U64(pos & 63)) & U64(1)
        acc |= bit << U64(cnt)
        cnt += 1
        if cnt == 64:
            state = _absorb(state, acc)
            acc = U64(0)
            cnt = 0
    if cnt:
        state = _absorb(state, acc)
    return state & bmask


@njit(inline="always")
def _scan1d(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
            t, start, d):
    best = _M64
    arg = 0
    for i in range(d):
        s = _sym1d(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic,
                   bmask, t, start + i)
        if s < best:
            best = s
            arg = i
    return arg


@njit(inline="always")
def _irw_from(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
              t, mk, fs, start, d0, Ls, ds, Js):
    """Iterated random walk anchored at local index `start`; returns the
    local index of the final anchor.  Mirrors one_d.irw_lphs exactly."""
    jj = _scan1d(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic,
                 bmask, t, start, d0)
    p = 0
    for k in range(Ls.shape[0]):
        jj += Js[k]
        p += jj
        lane = _absorb(mk, _child2(fs, TAG_STAGE, U64(k + 1)))
        L = Ls[k]
        dk = ds[k]
        best = _M64
        jmin = 0
        pos = 0
        for _ in range(dk):
            s = _sym1d(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                       cyclic, bmask, t, start + p + pos)
            if s < best:
                best = s
                jmin = pos
            pos += _bounded(_absorb(lane, s), 1, L - 1)
        jj = jmin
    return start + p + jj


@njit(parallel=True, **_FAST)
def eng_basic(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
              d):
    T = lane_in.shape[0]
    out = np.empty(T, dtype=np.int64)
    for t in prange(T):
        out[t] = _scan1d(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                         cyclic, bmask, t, 0, d)
    return out


@njit(parallel=True, **_FAST)
def eng_rw(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
           rw_lane, L, d, start):
    T = lane_in.shape[0]
    out = np.empty(T, dtype=np.int64)
    for t in prange(T):
        j = start
        best = _M64
        jmin = start
        for _ in range(d):
            s = _sym1d(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                       cyclic, bmask, t, j)
            if s < best:
                best = s
                jmin = j
            j += _bounded(_absorb(rw_lane[t], s), 1, L - 1)
        out[t] = jmin
    return out


@njit(parallel=True, **_FAST)
def eng_irw(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic, bmask,
            mk, fs, d0, Ls, ds, Js):
    T = lane_in.shape[0]
    out = np.empty(T, dtype=np.int64)
    for t in prange(T):
        out[t] = _irw_from(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                           cyclic, bmask, t, mk[t], fs[t], 0, d0, Ls, ds, Js)
    return out


@njit(parallel=True, **_FAST)
def eng_cyclic_rw(lane_in, n, r, bmask, mk, fs, m, w, L):
    """Repeated full-length walk with per-round relabeling and jumps.

    Hashed backend only; cyclic.  Returns final landing position mod n.
    """
    T = lane_in.shape[0]
    out = np.empty(T, dtype=np.int64)
    for t in prange(T):
        pos = np.int64(0)
        for rnd in range(1, m + 1):
            relabel = _absorb(mk[t], _child2(fs[t], TAG_RELABEL, U64(rnd)))
            stepl = _absorb(mk[t], _child2(fs[t], TAG_STAGE, U64(rnd)))
            jumpl = _absorb(mk[t], _child2(fs[t], TAG_JUMP, U64(rnd)))
            j = pos
            best = _M64
            jmin = pos
            rawmin = U64(0)
            for _ in range(w):
                raw = _absorb(lane_in[t], U64((j + r[t]) % n)) & bmask
                s = _absorb(relabel, raw)
                if s < best:
                    best = s
                    jmin = j
                    rawmin = raw
                j += _bounded(_absorb(stepl, raw), 1, L - 1)
            if rnd < m:
                pos = (jmin + _bounded(_absorb(jumpl, rawmin), 0, n)) % n
            else:
                pos = jmin % n
        out[t] = pos
    return out


@njit(parallel=True, **_FAST)
def eng_las_vegas(code, lane_in, lane_fx, words, wofs, tiles, n, r, cyclic,
                  bmask, mk, fs, d0, Ls, ds, Js, R, w):
    """Shift-bounded Las Vegas evaluation: landing cells and bottom flags.

    Sliding-window min-scan via a monotone deque gives the distinct
    anchors; an iterated walk runs from each anchor under one shared
    stream; disagreement between landings raises the bottom flag.
    """
    T = lane_in.shape[0]
    vals = np.empty(T, dtype=np.int64)
    bots = np.zeros(T, dtype=np.bool_)
    nanch = np.zeros(T, dtype=np.int64)
    for t in prange(T):
        total = R + w
        syms = np.empty(total, dtype=np.uint64)
        for i in range(total):
            syms[i] = _sym1d(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                             cyclic, bmask, t, i)
        dq = np.empty(total, dtype=np.int64)
        head = 0
        tail = 0
        anchors = np.empty(R + 1, dtype=np.int64)
        n_anchor = 0
        for i in range(total):
            while tail > head and syms[dq[tail - 1]] > syms[i]:
                tail -= 1
            dq[tail] = i
            tail += 1
            rr = i - w + 1
            if rr >= 0:
                while dq[head] < rr:
                    head += 1
                a = dq[head]
                if n_anchor == 0 or anchors[n_anchor - 1] != a:
                    anchors[n_anchor] = a
                    n_anchor += 1
        landing = np.int64(-1)
        ok = True
        for ai in range(n_anchor):
            cell = _irw_from(code, lane_in, lane_fx, words, wofs, tiles, n, r,
                             cyclic, bmask, t, mk[t], fs[t], anchors[ai], d0,
                             Ls, ds, Js)
            if ai == 0:
                landing = cell
            elif cell != landing:
                ok = False
                break
        nanch[t] = n_anchor
        if ok:
            vals[t] = landing
        else:
            vals[t] = np.int64(-1)
            bots[t] = True
    return vals, bots, nanch


# ---------------------------------------------------------------------------
# 2D engines


@njit(inline="always")
def _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t, i, j):
    if code == 0:
        ii = i + r1[t]
        jj = j + r2[t]
        if cyclic:
            ii %= n
            jj %= n
        key = (U64(ii) << _C32) | U64(jj)
        return _absorb(lane_in[t], key) & bmask
    # generic group: coordinates must be non-negative (host adds a margin)
    e = _mod61(gv[t] + _mulmod61(U64(i), gw1[t]) + _mulmod61(U64(j), gw2[t]))
    return _absorb(lane_in[t], e) & bmask


@njit(inline="always")
def _exp61(gv, gw1, gw2, t, i, j):
    return _mod61(gv[t] + _mulmod61(U64(i), gw1[t]) + _mulmod61(U64(j), gw2[t]))


@njit(inline="always")
def _minhash2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t, m,
               base_i, base_j):
    best = _M64
    bi = base_i
    bj = base_j
    for i in range(base_i, base_i + m):
        for j in range(base_j, base_j + m):
            s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                       t, i, j)
            if s < best:
                best = s
                bi = i
                bj = j
    return bi, bj


@njit(parallel=True, **_FAST)
def eng_minhash(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, m,
                base_i, base_j):
    T = lane_in.shape[0]
    oi = np.empty(T, dtype=np.int64)
    oj = np.empty(T, dtype=np.int64)
    for t in prange(T):
        bi, bj = _minhash2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic,
                            bmask, t, m, base_i, base_j)
        oi[t] = bi
        oj[t] = bj
    return oi, oj


@njit(inline="always")
def _threestage(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                m1, off2, L2, steps2, off3, B3, d3, base_i, base_j,
                exps, coords, log_queries):
    """Three chained 2D stages.  All geometry parameters are host-computed:
    m1 = floor(sqrt(d/3)) box side, off2 = 2*floor(sqrt(d)),
    L2 = floor((d/3)^(1/4)), steps2 = floor(sqrt(d/3)),
    off3 = 2*floor(d^(3/4)), B3 = floor((d/3)^(3/8)), d3 = floor(d/3).

    When log_queries is true, each query's group exponent and packed
    coordinates are recorded for collision accounting.
    """
    qn = 0
    # stage 1: min scan over the m1 x m1 box
    best = _M64
    i0 = base_i
    j0 = base_j
    for i in range(base_i, base_i + m1):
        for j in range(base_j, base_j + m1):
            s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                       t, i, j)
            if log_queries:
                exps[qn] = _exp61(gv, gw1, gw2, t, i, j)
                coords[qn] = (np.int64(i) << 22) | np.int64(j)
                qn += 1
            if s < best:
                best = s
                i0 = i
                j0 = j

    # stage 2: row-by-row walk; steps are arithmetic in the symbol value
    i = i0 + off2
    j0b = j0 + off2
    best = _M64
    i1 = i
    j1 = j0b
    for _ in range(steps2):
        j = j0b
        rbest = _M64
        for _ in range(steps2):
            s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                       t, i, j)
            if log_queries:
                exps[qn] = _exp61(gv, gw1, gw2, t, i, j)
                coords[qn] = (np.int64(i) << 22) | np.int64(j)
                qn += 1
            if s < best:
                best = s
                i1 = i
                j1 = j
            if s < rbest:
                rbest = s
            j += 1 + np.int64(s % U64(L2))
        i += 1 + np.int64((rbest // U64(L2)) % U64(L2))

    # stage 3: unit steps on one axis, signed arithmetic steps on the other
    i = i1 + off3
    j = j1 + off3
    best = _M64
    i2 = i
    j2 = j
    for _ in range(d3):
        s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                   i, j)
        if log_queries:
            exps[qn] = _exp61(gv, gw1, gw2, t, i, j)
            coords[qn] = (np.int64(i) << 22) | np.int64(j)
            qn += 1
        if s < best:
            best = s
            i2 = i
            j2 = j
        i += 1
        j += np.int64(s % U64(2 * B3 + 1)) - B3
    return i2, j2, qn


@njit(parallel=True, **_FAST)
def eng_threestage(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                   m1, off2, L2, steps2, off3, B3, d3, base_i, base_j):
    T = lane_in.shape[0]
    oi = np.empty(T, dtype=np.int64)
    oj = np.empty(T, dtype=np.int64)
    dummy_e = np.empty(1, dtype=np.uint64)
    dummy_c = np.empty(1, dtype=np.int64)
    for t in prange(T):
        i2, j2, _ = _threestage(code, lane_in, gv, gw1, gw2, n, r1, r2,
                                cyclic, bmask, t, m1, off2, L2, steps2, off3,
                                B3, d3, base_i, base_j, dummy_e, dummy_c,
                                False)
        oi[t] = i2
        oj[t] = j2
    return oi, oj


@njit(parallel=True, **_FAST)
def eng_threestage_logged(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic,
                          bmask, m1, off2, L2, steps2, off3, B3, d3,
                          base_i, base_j, cap):
    """Three-stage walk that also counts exponent collisions between
    distinct queried coordinates (generic-group runs)."""
    T = lane_in.shape[0]
    oi = np.empty(T, dtype=np.int64)
    oj = np.empty(T, dtype=np.int64)
    collisions = np.zeros(T, dtype=np.int64)
    for t in prange(T):
        exps = np.empty(cap, dtype=np.uint64)
        coords = np.empty(cap, dtype=np.int64)
        i2, j2, qn = _threestage(code, lane_in, gv, gw1, gw2, n, r1, r2,
                                 cyclic, bmask, t, m1, off2, L2, steps2, off3,
                                 B3, d3, base_i, base_j, exps, coords, True)
        oi[t] = i2
        oj[t] = j2
        order = np.argsort(exps[:qn])
        c = 0
        for k in range(1, qn):
            a = order[k - 1]
            b = order[k]
            if exps[a] == exps[b] and coords[a] != coords[b]:
                c += 1
        collisions[t] = c
    return oi, oj, collisions


@njit(inline="always")
def _point_key(i, j):
    return ((i + (1 << 30)) << 32) | (j + (1 << 30))


@njit(inline="always")
def _table_find(table, pi, pj, tmask, i, j):
    """Index of point (i, j) in the visit list, or -1."""
    h = np.int64(_mix64(U64(_point_key(i, j))) & U64(tmask))
    while table[h] != -1:
        u = table[h]
        if pi[u] == i and pj[u] == j:
            return u
        h = (h + 1) & tmask
    return np.int64(-1)


@njit(inline="always")
def _table_insert(table, pi, pj, tmask, s):
    h = np.int64(_mix64(U64(_point_key(pi[s], pj[s]))) & U64(tmask))
    while table[h] != -1:
        h = (h + 1) & tmask
    table[h] = s


@njit(inline="always")
def _rwstage(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t, d, L,
             i, j, lane1, lane2, pi, pj, psym, table, tmask):
    """One symmetric 2D walk stage with canonical cycle breaking.

    On a revisit, restart from the smallest-symbol point of the loop
    segment and move right (j += 1) until leaving the visited set.
    """
    for h in range(tmask + 1):
        table[h] = -1
    span = 2 * L + 1
    for s in range(d):
        pi[s] = i
        pj[s] = j
        v = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                   i, j)
        psym[s] = v
        _table_insert(table, pi, pj, tmask, s)
        i += _bounded(_absorb(lane1, v), 0, span) - L
        j += _bounded(_absorb(lane2, v), 0, span) - L
        hit = _table_find(table, pi, pj, tmask, i, j)
        if hit >= 0:
            kbest = hit
            for u in range(hit, s + 1):
                if psym[u] < psym[kbest]:
                    kbest = u
            i = pi[kbest]
            j = pj[kbest]
            while _table_find(table, pi, pj, tmask, i, j) >= 0:
                j += 1
    best = _M64
    bi = pi[0]
    bj = pj[0]
    for s in range(d):
        if psym[s] < best:
            best = psym[s]
            bi = pi[s]
            bj = pj[s]
    return bi, bj


@njit(parallel=True, **_FAST)
def eng_rwhash(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
               mk, fs, m0, dprime, Ls, base_i, base_j):
    """Min scan then I symmetric walk stages with growing step bounds."""
    T = lane_in.shape[0]
    oi = np.empty(T, dtype=np.int64)
    oj = np.empty(T, dtype=np.int64)
    I = Ls.shape[0]
    tsize = 1
    while tsize < 4 * dprime:
        tsize *= 2
    for t in prange(T):
        pi = np.empty(dprime, dtype=np.int64)
        pj = np.empty(dprime, dtype=np.int64)
        psym = np.empty(dprime, dtype=np.uint64)
        table = np.empty(tsize, dtype=np.int64)
        i, j = _minhash2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic,
                          bmask, t, m0, base_i, base_j)
        for k in range(I):
            lane1 = _absorb(mk[t], _child2(fs[t], TAG_STAGE, U64(2 * k + 1)))
            lane2 = _absorb(mk[t], _child2(fs[t], TAG_STAGE, U64(2 * k + 2)))
            i, j = _rwstage(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic,
                            bmask, t, dprime, Ls[k], i, j, lane1, lane2,
                            pi, pj, psym, table, tsize - 1)
        oi[t] = i
        oj[t] = j
    return oi, oj


@njit(inline="always")
def _irw_col(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
             mk, fs, col, d0, Ls, ds, Js):
    """Iterated walk along the j axis of a fixed column; returns the local
    j of the final anchor."""
    best = _M64
    arg = 0
    for j in range(d0):
        s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                   col, j)
        if s < best:
            best = s
            arg = j
    jj = arg
    p = 0
    for k in range(Ls.shape[0]):
        jj += Js[k]
        p += jj
        lane = _absorb(mk, _child2(fs, TAG_STAGE, U64(k + 1)))
        L = Ls[k]
        dk = ds[k]
        best = _M64
        jmin = 0
        pos = 0
        for _ in range(dk):
            s = _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                       t, col, p + pos)
            if s < best:
                best = s
                jmin = pos
            pos += _bounded(_absorb(lane, s), 1, L - 1)
        jj = jmin
    return p + jj


@njit(inline="always")
def _rec_column_symbol(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                       t, mk, fs_in, col, in_d0, in_Ls, in_ds, in_Js,
                       in_offset):
    """Distilled symbol of one column: inner walk along the column, then
    read the cell `in_offset` below the inner anchor."""
    j0 = _irw_col(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                  mk, fs_in, col, in_d0, in_Ls, in_ds, in_Js)
    return _sym2d(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask, t,
                  col, j0 + in_offset)


@njit(parallel=True, **_FAST)
def eng_recursive(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic, bmask,
                  mk, fs,
                  out_d0, out_Ls, out_ds, out_Js,
                  in_d0, in_Ls, in_ds, in_Js, in_offset,
                  col_d0, col_Ls, col_ds, col_Js):
    """Column-synchronization hash: an outer iterated walk over distilled
    column symbols picks a common column, then an iterated walk along it
    picks a common row."""
    T = lane_in.shape[0]
    oi = np.empty(T, dtype=np.int64)
    oj = np.empty(T, dtype=np.int64)
    for t in prange(T):
        fs_out = _child2(fs[t], 0xA11, U64(1))
        fs_in = _child2(fs[t], 0xA11, U64(2))
        fs_col = _child2(fs[t], 0xA11, U64(3))

        best = _M64
        arg = 0
        for i in range(out_d0):
            s = _rec_column_symbol(code, lane_in, gv, gw1, gw2, n, r1, r2,
                                   cyclic, bmask, t, mk[t], fs_in, i,
                                   in_d0, in_Ls, in_ds, in_Js, in_offset)
            if s < best:
                best = s
                arg = i
        jj = arg
        p = 0
        for k in range(out_Ls.shape[0]):
            jj += out_Js[k]
            p += jj
            lane = _absorb(mk[t], _child2(fs_out, TAG_STAGE, U64(k + 1)))
            L = out_Ls[k]
            dk = out_ds[k]
            best = _M64
            jmin = 0
            pos = 0
            for _ in range(dk):
                s = _rec_column_symbol(code, lane_in, gv, gw1, gw2, n, r1, r2,
                                       cyclic, bmask, t, mk[t], fs_in,
                                       p + pos, in_d0, in_Ls, in_ds, in_Js,
                                       in_offset)
                if s < best:
                    best = s
                    jmin = pos
                pos += _bounded(_absorb(lane, s), 1, L - 1)
            jj = jmin
        i1 = p + jj

        oi[t] = i1
        oj[t] = _irw_col(code, lane_in, gv, gw1, gw2, n, r1, r2, cyclic,
                         bmask, t, mk[t], fs_col, i1, col_d0, col_Ls, col_ds,
                         col_Js)
    return oi, oj
