"""Hot loops, each in a numba and a numpy flavour.

The public names at the bottom are bound to one flavour according to
``hauscover._accel.USE_NUMBA``.  Both flavours are importable directly
(``*_jit`` / ``*_np``) so tests and the benchmark can compare them; they
are expected to agree bit for bit.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit


def libm_pow(x, alpha):
    """Elementwise ``x ** alpha`` through the C library pow.

    numpy's vectorised power may differ from libm in the last bit; compiled
    ``**`` calls libm, so the numpy kernels use this to stay bit-identical.
    """
    x = np.asarray(x, dtype=float)
    flat = np.fromiter(map(math.pow, x.ravel().tolist(), [float(alpha)] * x.size), float, x.size)
    return flat.reshape(x.shape)

# ---------------------------------------------------------------- triangle


@njit(cache=True)
def triangle_excess_jit(d):
    """Worst triangle excess ``d[i,k] - d[i,j] - d[j,k]`` per ordered pair.

    Returns ``(excess, via)``; ``via[i, k]`` is the first intermediate point
    attaining the maximum, -1 when ``n < 3``.  Intermediates exclude i and k.
    """
    n = d.shape[0]
    excess = np.full((n, n), -np.inf)
    via = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for k in range(n):
            if i == k:
                continue
            best = -np.inf
            arg = -1
            for j in range(n):
                if j == i or j == k:
                    continue
                e = d[i, k] - (d[i, j] + d[j, k])
                if e > best:
                    best = e
                    arg = j
            excess[i, k] = best
            via[i, k] = arg
    return excess, via


def triangle_excess_np(d):
    n = d.shape[0]
    excess = np.full((n, n), -np.inf)
    via = np.full((n, n), -1, dtype=np.int64)
    if n < 3:
        return excess, via
    for i in range(n):
        # e[k, j] = d[i,k] - (d[i,j] + d[j,k])
        e = d[i, :, None] - (d[i, None, :] + d.T)
        e[:, i] = -np.inf
        e[np.arange(n), np.arange(n)] = -np.inf
        arg = np.argmax(e, axis=1)
        excess[i] = e[np.arange(n), arg]
        via[i] = arg
        excess[i, i] = -np.inf
        via[i, i] = -1
    return excess, via


# ------------------------------------------------------------ subset costs


@njit(cache=True)
def subset_costs_jit(d, alpha, delta, eps):
    """Cost ``max(diam, delta)**alpha`` of every bitmask subset of ``range(n)``.

    Subsets with ``diam >= eps`` get ``inf``; the empty mask costs 0.
    """
    n = d.shape[0]
    size = 1 << n
    diam = np.zeros(size)
    cost = np.empty(size)
    cost[0] = 0.0
    for mask in range(1, size):
        top = 0
        while (mask >> (top + 1)) != 0:
            top += 1
        rest = mask ^ (1 << top)
        m = diam[rest]
        for j in range(top):
            if (rest >> j) & 1:
                if d[top, j] > m:
                    m = d[top, j]
        diam[mask] = m
        if m < eps:
            cost[mask] = max(m, delta) ** alpha
        else:
            cost[mask] = np.inf
    return cost


def subset_costs_np(d, alpha, delta, eps):
    n = d.shape[0]
    diam = np.zeros(1 << n)
    for top in range(n):
        rest = np.arange(1 << top)
        cross = np.zeros(rest.size)
        for j in range(top):
            hit = ((rest >> j) & 1).astype(bool)
            cross[hit] = np.maximum(cross[hit], d[top, j])
        diam[(1 << top) + rest] = np.maximum(diam[rest], cross)
    cost = np.where(diam < eps, libm_pow(np.maximum(diam, delta), alpha), np.inf)
    cost[0] = 0.0
    return cost


# -------------------------------------------------------- partition search


@njit(cache=True)
def best_partition_jit(table, n):
    """Minimum of ``sum(table[block mask])`` over set partitions of ``range(n)``.

    Partitions are visited as restricted growth strings in lexicographic
    order; the first minimum wins.  Returns ``(cost, rgs)``.
    """
    best_rgs = np.zeros(n, dtype=np.int64)
    if n == 0:
        return 0.0, best_rgs
    a = np.zeros(n, dtype=np.int64)
    mx = np.zeros(n, dtype=np.int64)
    masks = np.zeros(n, dtype=np.int64)
    best = np.inf
    while True:
        for b in range(n):
            masks[b] = 0
        for i in range(n):
            masks[a[i]] |= 1 << i
        c = 0.0
        for b in range(n):
            c += table[masks[b]]
        if c < best:
            best = c
            for i in range(n):
                best_rgs[i] = a[i]
        i = n - 1
        while i >= 1 and a[i] == mx[i - 1] + 1:
            i -= 1
        if i == 0:
            break
        a[i] += 1
        mx[i] = max(mx[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            mx[j] = mx[i]
    return best, best_rgs


def restricted_growth_strings(n):
    """All restricted growth strings of length n, lexicographic, as an int8 array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rgs = np.zeros((1, 1), dtype=np.int8)
    mx = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        counts = mx.astype(np.int64) + 2
        total = int(counts.sum())
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        vals = (np.arange(total) - starts).astype(np.int8)
        rgs = np.column_stack([np.repeat(rgs, counts, axis=0), vals])
        mx = np.maximum(np.repeat(mx, counts), vals)
    return rgs


def best_partition_np(table, n, chunk=1 << 17):
    if n == 0:
        return 0.0, np.zeros(0, dtype=np.int64)
    rgs = restricted_growth_strings(n)
    weights = np.left_shift(1, np.arange(n, dtype=np.int64))
    best, best_row = np.inf, 0
    for lo in range(0, rgs.shape[0], chunk):
        part = rgs[lo:lo + chunk]
        c = np.zeros(part.shape[0])
        for b in range(n):
            c += table[((part == b) * weights).sum(axis=1)]
        k = int(np.argmin(c))
        if c[k] < best:
            best, best_row = float(c[k]), lo + k
    return best, rgs[best_row].astype(np.int64)


# ------------------------------------------------------- interval grouping


@njit(cache=True)
def _group_cost_jit(span, alpha, eps):
    if span < eps:
        return span ** alpha, False
    r = np.fmod(span, eps)
    full = round((span - r) / eps)
    return full * eps ** alpha + r ** alpha, True


@njit(cache=True)
def grouping_dp_jit(a, b, alpha, eps):
    """Optimal split of sorted components into consecutive groups.

    A group spanning length L costs ``L**alpha`` when ``L < eps`` and
    ``floor(L/eps) * eps**alpha + (L mod eps)**alpha`` otherwise, the latter
    flagged as an unattained infimum.  Pass ``eps=inf`` for no cap.
    Ties prefer an attained history, then the smallest split index.
    Returns ``(dp, back, unattained)`` of length ``m + 1``.
    """
    m = a.shape[0]
    dp = np.zeros(m + 1)
    back = np.zeros(m + 1, dtype=np.int64)
    unatt = np.zeros(m + 1, dtype=np.bool_)
    for j in range(1, m + 1):
        best = np.inf
        best_u = True
        arg = 0
        for i in range(j):
            g, u = _group_cost_jit(b[j - 1] - a[i], alpha, eps)
            c = dp[i] + g
            cu = u or unatt[i]
            if c < best or (c == best and best_u and not cu):
                best = c
                best_u = cu
                arg = i
        dp[j] = best
        back[j] = arg
        unatt[j] = best_u
    return dp, back, unatt


def group_cost_np(span, alpha, eps):
    span = np.asarray(span, dtype=float)
    short = span < eps
    if np.isinf(eps):
        return libm_pow(span, alpha), ~short
    r = np.fmod(span, eps)
    full = np.round((span - r) / eps)
    capped = full * eps ** alpha + libm_pow(r, alpha)
    return np.where(short, libm_pow(span, alpha), capped), ~short


def grouping_dp_np(a, b, alpha, eps):
    m = a.shape[0]
    dp = np.zeros(m + 1)
    back = np.zeros(m + 1, dtype=np.int64)
    unatt = np.zeros(m + 1, dtype=bool)
    for j in range(1, m + 1):
        g, u = group_cost_np(b[j - 1] - a[:j], alpha, eps)
        c = dp[:j] + g
        cu = u | unatt[:j]
        best = c.min()
        ties = np.flatnonzero(c == best)
        good = ties[~cu[ties]]
        arg = int(good[0]) if good.size else int(ties[0])
        dp[j] = c[arg]
        back[j] = arg
        unatt[j] = cu[arg]
    return dp, back, unatt


if USE_NUMBA:
    triangle_excess = triangle_excess_jit
    subset_costs = subset_costs_jit
    best_partition = best_partition_jit
    grouping_dp = grouping_dp_jit
else:
    triangle_excess = triangle_excess_np
    subset_costs = subset_costs_np
    best_partition = best_partition_np
    grouping_dp = grouping_dp_np
