"""Numba kernels for discrepancy computation.

The exact star-discrepancy is split into its two one-sided suprema:

  closed part:  max over boxes of  A_closed(y)/N - vol(y)
                (limit of genuine anchored boxes shrinking onto y)
  open part:    max over boxes of  vol(y) - A_open(y)/N
                (attained at y itself)

Both are maximized over "snapped" corners only: for the closed part every
face of a maximizing box passes through a point; for the open part every
face passes through a blocking point or sits at 1.  Each kernel runs an
iterative depth-first enumeration over per-dimension sorted candidate
values with branch-and-bound pruning:

  * harvest: the fully-snapped completion of every node is itself a valid
    box, evaluated immediately so the incumbent rises early;
  * count/volume bound: a subtree cannot beat the incumbent if even the
    most favorable count/volume combination fails;
  * order-statistic bound (closed part): a box keeping m of the node's
    points has volume at least prod_k (m-th smallest coordinate in dim k).

Pruning uses <= against the incumbent, so ties found later are dropped;
initializing the incumbent with any genuine box value (e.g. a threshold
accepting run) therefore never changes the returned maximum.

All box counting uses exact comparisons on the stored doubles; candidate
corners are drawn from the same stored values, so no epsilons are needed.
Volumes are accumulated dimension 0 upward in every kernel, keeping the
oracle and the branch-and-bound bit-compatible.
"""

import numpy as np
from numba import njit, uint64, int64, float64

U64_GAMMA = uint64(0x9E3779B97F4A7C15)
U64_MIX1 = uint64(0xBF58476D1CE4E5B9)
U64_MIX2 = uint64(0x94D049BB133111EB)


# ---------------------------------------------------------------------------
# splitmix64 (mirrors lowdisc.rng, kept in sync by test_optimizer)
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _sm64(state):
    state = state + U64_GAMMA
    z = state
    z = (z ^ (z >> uint64(30))) * U64_MIX1
    z = (z ^ (z >> uint64(27))) * U64_MIX2
    return state, z ^ (z >> uint64(31))


# ---------------------------------------------------------------------------
# Sequence evaluation
# ---------------------------------------------------------------------------

@njit(cache=True)
def scrambled_vdc_batch(index_values, base, mapping, out):
    """Scrambled radical inverse of each index value (zero-fixing or not).

    Digits are accumulated Horner-style from the most significant digit.
    """
    n = index_values.shape[0]
    digits = np.empty(64, np.int64)
    tail_num = float(mapping[0])
    bm1 = float(base - 1)
    for i in range(n):
        v = index_values[i]
        nd = 0
        while v > 0:
            digits[nd] = v % base
            v //= base
            nd += 1
        x = 0.0
        for j in range(nd - 1, -1, -1):
            x = (x + mapping[digits[j]]) / base
        if tail_num != 0.0:
            scale = 1.0
            for _ in range(nd):
                scale /= base
            x += tail_num * scale / bm1
        out[i] = x


@njit(cache=True)
def eval_perm_batch(digit_matrix, base, perms, out):
    """Star-discrepancy of the scrambled sequence for each permutation row.

    digit_matrix[i, j] is the j-th base-p digit of the i-th index value
    (least significant first, zero padded; rows share one width, so only
    zero-fixing permutations keep the padding silent).
    """
    n, width = digit_matrix.shape
    m = perms.shape[0]
    vals = np.empty(n, np.float64)
    for r in range(m):
        for i in range(n):
            x = 0.0
            for j in range(width - 1, -1, -1):
                x = (x + perms[r, digit_matrix[i, j]]) / base
            vals[i] = x
        vals.sort()
        worst = 0.0
        for i in range(n):
            dev = abs(vals[i] - (2.0 * (i + 1) - 1.0) / (2.0 * n))
            if dev > worst:
                worst = dev
        out[r] = 0.5 / n + worst


@njit(cache=True)
def star_1d_sorted(xs):
    """Closed-form star-discrepancy of sorted 1-D points:
    1/(2N) + max_i |x_(i) - (2i-1)/(2N)|."""
    n = xs.shape[0]
    worst = 0.0
    for i in range(n):
        dev = abs(xs[i] - (2.0 * (i + 1) - 1.0) / (2.0 * n))
        if dev > worst:
            worst = dev
    return 0.5 / n + worst


# ---------------------------------------------------------------------------
# Corner evaluation shared by oracle and TA
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _corner_value(pts, y, n, d):
    """max(closed-count/N - vol, vol - open-count/N) at corner y."""
    vol = 1.0
    for k in range(d):
        vol *= y[k]
    n_closed = 0
    n_open = 0
    for i in range(n):
        closed = True
        opened = True
        for k in range(d):
            x = pts[i, k]
            if x > y[k]:
                closed = False
                opened = False
                break
            elif x == y[k]:
                opened = False
        if closed:
            n_closed += 1
            if opened:
                n_open += 1
    a = n_closed / n - vol
    b = vol - n_open / n
    if a >= b:
        return a, True
    return b, False


@njit(cache=True)
def oracle_scan(pts, grid_flat, goff, gsize, witness_out):
    """Definitional max over every grid corner; witness_out gets the best
    corner and witness_out[d] the form flag (1 closed, 0 open)."""
    n, d = pts.shape
    idx = np.zeros(d, np.int64)
    y = np.empty(d, np.float64)
    best = -2.0
    while True:
        for k in range(d):
            y[k] = grid_flat[goff[k] + idx[k]]
        val, is_closed = _corner_value(pts, y, n, d)
        if val > best:
            best = val
            for k in range(d):
                witness_out[k] = y[k]
            witness_out[d] = 1.0 if is_closed else 0.0
        k = 0
        while k < d:
            idx[k] += 1
            if idx[k] < gsize[k]:
                break
            idx[k] = 0
            k += 1
        if k == d:
            break
    return best


# ---------------------------------------------------------------------------
# Threshold accepting
# ---------------------------------------------------------------------------

@njit(cache=True)
def ta_scan(pts, grid_flat, goff, gsize, iterations, restarts, seed,
            t0_override, witness_out):
    """Seeded threshold-accepting lower bound on the star-discrepancy.

    One splitmix64 draw drives each move: dimension, direction, and a
    geometric step size.  The acceptance threshold decays linearly from
    the empirical std of 100 random corner values (or t0_override > 0)
    to zero.  Restarts use seed + restart_index and the reported result
    is the max over everything evaluated.
    """
    n, d = pts.shape
    y = np.empty(d, np.float64)
    idx = np.empty(d, np.int64)
    best = -2.0
    for r in range(restarts):
        state = uint64(seed + r)
        # initial corner and threshold calibration
        calib = np.empty(100, np.float64)
        for c in range(100):
            for k in range(d):
                state, draw = _sm64(state)
                idx[k] = int64(draw % uint64(gsize[k]))
                y[k] = grid_flat[goff[k] + idx[k]]
            val, is_closed = _corner_value(pts, y, n, d)
            calib[c] = val
            if val > best:
                best = val
                for k in range(d):
                    witness_out[k] = y[k]
                witness_out[d] = 1.0 if is_closed else 0.0
        t0 = t0_override
        if t0 <= 0.0:
            mean = 0.0
            for c in range(100):
                mean += calib[c]
            mean /= 100.0
            var = 0.0
            for c in range(100):
                dev = calib[c] - mean
                var += dev * dev
            t0 = np.sqrt(var / 100.0)
            if t0 <= 0.0:
                t0 = 1.0 / n
        # fresh random start corner
        for k in range(d):
            state, draw = _sm64(state)
            idx[k] = int64(draw % uint64(gsize[k]))
            y[k] = grid_flat[goff[k] + idx[k]]
        cur, _ = _corner_value(pts, y, n, d)
        for t in range(iterations):
            threshold = t0 * (1.0 - (t + 1.0) / iterations)
            state, draw = _sm64(state)
            dim = int64(draw % uint64(d))
            up = (draw >> uint64(20)) & uint64(1)
            step = 1
            bits = draw >> uint64(21)
            while (bits & uint64(1)) == uint64(1) and step < 30:
                step += 1
                bits >>= uint64(1)
            old = idx[dim]
            if up == uint64(1):
                new = old + step
                if new > gsize[dim] - 1:
                    new = gsize[dim] - 1
            else:
                new = old - step
                if new < 0:
                    new = 0
            idx[dim] = new
            y[dim] = grid_flat[goff[dim] + new]
            val, is_closed = _corner_value(pts, y, n, d)
            if val > best:
                best = val
                for k in range(d):
                    witness_out[k] = y[k]
                witness_out[d] = 1.0 if is_closed else 0.0
            if val >= cur - threshold:
                cur = val
            else:
                idx[dim] = old
                y[dim] = grid_flat[goff[dim] + old]
    return best


# ---------------------------------------------------------------------------
# Branch-and-bound exact enumeration
# ---------------------------------------------------------------------------

@njit(cache=True)
def closed_bb(pts, best_init, witness_out, stats_out):
    """Exact max of A_closed(y)/N - vol(y) over snapped corners.

    witness_out must hold d floats; stats_out[0] counts nodes entered.
    Returns max(best_init, true maximum).
    """
    n, d = pts.shape
    pool = np.empty((d + 1, n), np.int32)
    keys = np.empty((d + 1, n), np.float64)
    cnt = np.empty(d + 1, np.int64)
    vpart = np.empty(d + 1, np.float64)
    pos = np.empty(d + 1, np.int64)
    mrest = np.empty(d + 1, np.float64)
    ycur = np.empty(d, np.float64)
    maxs = np.empty(d, np.float64)
    scratch = np.empty(n, np.float64)
    prodacc = np.empty(n, np.float64)
    nodes = 0
    best = best_init

    for t in range(n):
        pool[0, t] = t
    cnt[0] = n
    vpart[0] = 1.0

    depth = 0
    entering = True
    while depth >= 0:
        if entering:
            entering = False
            level = depth
            count = cnt[level]
            v_here = vpart[level]
            nodes += 1
            if count == 0:
                depth -= 1
                continue
            # per-dimension extrema over the remaining dims
            boundprod = 1.0
            fullprod = 1.0
            mrest_val = 1.0
            for k in range(level, d):
                mn = pts[pool[level, 0], k]
                mx = mn
                for t in range(1, count):
                    x = pts[pool[level, t], k]
                    if x < mn:
                        mn = x
                    elif x > mx:
                        mx = x
                boundprod *= mn
                fullprod *= mx
                maxs[k] = mx
                if k > level:
                    mrest_val *= mn
            val_full = count / n - v_here * fullprod
            if val_full > best:
                best = val_full
                for k in range(level):
                    witness_out[k] = ycur[k]
                for k in range(level, d):
                    witness_out[k] = maxs[k]
            if count / n - v_here * boundprod <= best:
                depth -= 1
                continue
            if level == d - 1:
                # last dimension: candidates are the sorted coords themselves
                for t in range(count):
                    scratch[t] = pts[pool[level, t], level]
                scratch[:count].sort()
                for t in range(count):
                    val = (t + 1) / n - v_here * scratch[t]
                    if val > best:
                        best = val
                        for k in range(level):
                            witness_out[k] = ycur[k]
                        witness_out[level] = scratch[t]
                depth -= 1
                continue
            # order-statistic bound across remaining dims
            for t in range(count):
                prodacc[t] = 1.0
            for k in range(level, d):
                for t in range(count):
                    scratch[t] = pts[pool[level, t], k]
                scratch[:count].sort()
                for t in range(count):
                    prodacc[t] *= scratch[t]
            kb = -2.0
            for t in range(count):
                val = (t + 1) / n - v_here * prodacc[t]
                if val > kb:
                    kb = val
            if kb <= best:
                depth -= 1
                continue
            # sort active set by the current dimension
            for t in range(count):
                scratch[t] = pts[pool[level, t], level]
            order = np.argsort(scratch[:count])
            for t in range(count):
                src = order[t]
                pool[level + 1, t] = pool[level, src]
                keys[level + 1, t] = scratch[src]
            mrest[level] = mrest_val
            pos[level] = count
            continue
        # scan the next child of the frame at `depth`
        level = depth
        p_end = pos[level]
        if p_end == 0:
            depth -= 1
            continue
        v = keys[level + 1, p_end - 1]
        s = p_end - 1
        while s > 0 and keys[level + 1, s - 1] == v:
            s -= 1
        pos[level] = s
        c = p_end  # points with coordinate <= v
        if c / n - vpart[level] * v * mrest[level] <= best:
            continue
        ycur[level] = v
        cnt[level + 1] = c
        vpart[level + 1] = vpart[level] * v
        depth += 1
        entering = True

    stats_out[0] = nodes
    return best


@njit(cache=True)
def open_bb(pts, best_init, witness_out, stats_out):
    """Exact max of vol(y) - A_open(y)/N over snapped-or-one corners."""
    n, d = pts.shape
    pool = np.empty((d + 1, n), np.int32)
    keys = np.empty((d + 1, n), np.float64)
    cnt = np.empty(d + 1, np.int64)
    vpart = np.empty(d + 1, np.float64)
    pos = np.empty(d + 1, np.int64)
    ycur = np.empty(d, np.float64)
    scratch = np.empty(n, np.float64)
    nodes = 0
    best = best_init

    for t in range(n):
        pool[0, t] = t
    cnt[0] = n
    vpart[0] = 1.0

    depth = 0
    entering = True
    while depth >= 0:
        if entering:
            entering = False
            level = depth
            count = cnt[level]
            v_here = vpart[level]
            nodes += 1
            # completion with every remaining face at 1
            val_ones = v_here - count / n
            if val_ones > best:
                best = val_ones
                for k in range(level):
                    witness_out[k] = ycur[k]
                for k in range(level, d):
                    witness_out[k] = 1.0
            if count == 0 or v_here <= best:
                depth -= 1
                continue
            if level == d - 1:
                for t in range(count):
                    scratch[t] = pts[pool[level, t], level]
                scratch[:count].sort()
                t = 0
                while t < count:
                    v = scratch[t]  # first occurrence: t points lie strictly below
                    val = v_here * v - t / n
                    if val > best:
                        best = val
                        for k in range(level):
                            witness_out[k] = ycur[k]
                        witness_out[level] = v
                    t += 1
                    while t < count and scratch[t] == v:
                        t += 1
                depth -= 1
                continue
            for t in range(count):
                scratch[t] = pts[pool[level, t], level]
            order = np.argsort(scratch[:count])
            for t in range(count):
                src = order[t]
                pool[level + 1, t] = pool[level, src]
                keys[level + 1, t] = scratch[src]
            pos[level] = count + 1  # count+1 encodes the y=1 child
            continue
        level = depth
        p_end = pos[level]
        if p_end == 0:
            depth -= 1
            continue
        count = cnt[level]
        if p_end == count + 1:
            # child keeping this face at 1; drop coordinates equal to 1.0
            # (possible only for the degenerate scrambled value at index 0)
            cap = count
            while cap > 0 and keys[level + 1, cap - 1] >= 1.0:
                cap -= 1
            pos[level] = count
            if vpart[level] <= best:
                continue
            ycur[level] = 1.0
            cnt[level + 1] = cap
            vpart[level + 1] = vpart[level]
            depth += 1
            entering = True
            continue
        v = keys[level + 1, p_end - 1]
        s = p_end - 1
        while s > 0 and keys[level + 1, s - 1] == v:
            s -= 1
        pos[level] = s
        if v >= 1.0:
            continue  # covered by the y=1 child
        c = s  # points strictly below v
        v_child = vpart[level] * v
        if v_child <= best:
            continue
        ycur[level] = v
        cnt[level + 1] = c
        vpart[level + 1] = v_child
        depth += 1
        entering = True

    stats_out[0] = nodes
    return best
