"""Seeded property suites over both engines.

``inequality_suite`` exercises the covering inequalities (monotonicity,
subadditivity, eps behaviour, separated additivity, exponent comparison,
Lipschitz pushforward); ``coarea_suite`` the slicing bounds.  Each case draws
from its own PCG64 stream keyed by ``(seed, suite, case)``, so reports are
reproducible byte for byte.
"""
from __future__ import annotations

import math
from collections import OrderedDict

import numpy as np

from . import coarea as co
from . import intervals as iv
from .covering import CoveringFamily, cover_value, pushforward_check
from .generators import RandomSpec, cantor_set, random_interval_union, random_space
from .metric import (FiniteMetricSpace, MetricMap, diameter, dist_to_set, lipschitz_constant,
                     neighborhood)

TOL = 1e-9


def _rng(seed, suite, case):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), suite, case])))


class Tally:
    """Per-property counters plus the first few violations."""

    def __init__(self, keep=25):
        self.counts = OrderedDict()
        self.details = []
        self.keep = keep

    def check(self, name, ok, **info):
        c = self.counts.setdefault(name, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1
            if len(self.details) < self.keep:
                self.details.append({"property": name, **{k: _plain(v) for k, v in info.items()}})
        return ok

    def le(self, name, lhs, rhs, tol=TOL, **info):
        return self.check(name, lhs <= rhs + tol * max(1.0, abs(rhs)), lhs=lhs, rhs=rhs, **info)

    @property
    def violations(self):
        return sum(v for _, v in self.counts.values())

    def as_dict(self):
        return {
            "properties": {k: {"checked": c, "violations": v} for k, (c, v) in self.counts.items()},
            "violations": self.violations,
            "details": self.details,
        }


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


def _subset(rng, pool, k):
    return tuple(sorted(int(x) for x in rng.choice(np.asarray(pool), size=k, replace=False)))


# ------------------------------------------------------------ finite cases


def _finite_case(rng, tally, case):
    n = int(rng.integers(3, 10))
    if rng.random() < 0.5:
        space = random_space(RandomSpec(int(rng.integers(2**63)), n, dim=int(rng.integers(1, 4))))
    else:
        space = random_space(RandomSpec(int(rng.integers(2**63)), n, synthetic=True))
    k = int(rng.integers(2, min(n, 8) + 1))
    E = _subset(rng, range(n), k)
    sub = _subset(rng, E, int(rng.integers(1, k + 1)))
    cut = int(rng.integers(1, k))
    perm = tuple(int(x) for x in rng.permutation(E))
    E1, E2 = tuple(sorted(perm[:cut])), tuple(sorted(perm[cut:]))
    alpha = float(rng.uniform(0.3, 2.5))
    beta = alpha + float(rng.uniform(0, 1.5))
    delta = 0.0 if rng.random() < 0.3 else float(rng.uniform(0, 0.3))
    dE = diameter(space, E)
    e1, e2 = sorted(rng.uniform(0.05, 1.5, size=2) * max(dE, 1e-3))
    info = dict(case=case, alpha=alpha, delta=delta)

    def val(S, eps=None, a=alpha, dl=delta):
        return cover_value(space, S, a, dl, eps)

    tally.le("diameter_monotone", diameter(space, sub), dE, tol=0, **info)
    x, y = (int(i) for i in rng.integers(n, size=2))
    A = _subset(rng, range(n), int(rng.integers(1, n + 1)))
    gap = abs(dist_to_set(space, x, A) - dist_to_set(space, y, A))
    tally.le("dist_to_set_1_lipschitz", gap, space.d(x, y), **info)
    r = float(rng.uniform(0.01, 1.0))
    tally.le("neighborhood_diameter", diameter(space, neighborhood(space, A, r)),
             diameter(space, A) + 2 * r, **info)

    v = val(E)
    tally.le("content_self_cover", val(E, dl=0.0).value, dE ** alpha, **info)
    tally.le("content_monotone", val(sub).value, v.value, **info)
    tally.le("premeasure_monotone_in_set", val(sub, e1).value, val(E, e1).value, **info)
    tally.le("content_subadditive", v.value, val(E1).value + val(E2).value, **info)
    tally.le("premeasure_subadditive", val(E, e1).value, val(E1, e1).value + val(E2, e1).value, **info)
    tally.le("premeasure_monotone_in_eps", val(E, e2).value, val(E, e1).value, **info)
    tally.le("content_below_premeasure", v.value, val(E, e1).value, **info)

    # separated additivity: every cross distance is >= the cap
    sep = float(space.distances[np.ix_(E1, E2)].min())
    whole, p1, p2 = val(E, sep), val(E1, sep), val(E2, sep)
    tally.check("separated_additivity_exact", whole.exact_value == p1.exact_value + p2.exact_value,
                lhs=whole.value, rhs=p1.value + p2.value, **info)

    for dl in (0.0,) + ((delta,) if delta < e1 else ()):
        hb = val(E, e1, beta, dl).value
        ha = val(E, e1, alpha, dl).value
        name = "exponent_comparison" if dl == 0 else "exponent_comparison_floor"
        tally.le(name, hb, e1 ** (beta - alpha) * ha, beta=beta, **info)

    # Lipschitz pushforward into a second space or onto the real line
    if rng.random() < 0.5:
        m = int(rng.integers(1, n + 1))
        target = random_space(RandomSpec(int(rng.integers(2**63)), m, dim=int(rng.integers(1, 3))))
        f = MetricMap(space, target, tuple(int(x) for x in rng.integers(0, m, size=n)))
    else:
        p = int(rng.integers(n))
        f = MetricMap.real(space, space.distances[p])  # f_p(x) = d(x, p)
        tally.le("distance_function_1_lipschitz", lipschitz_constant(f), 1.0, **info)
    C = lipschitz_constant(f, E)
    tally.le("image_diameter", diameter(f.codomain, f.image(E)), C * dE, **info)
    pair_C = max((diameter(f.codomain, f.image((x, y))) / space.d(x, y)
                  for i, x in enumerate(E) for y in E[i + 1:]), default=0.0)
    tally.check("lipschitz_pairwise_equivalence", pair_C == C, lhs=pair_C, rhs=C, **info)
    for eps in (None, e1):
        rep = pushforward_check(f, E, alpha, delta, eps, tol=TOL)
        name = "pushforward_content" if eps is None else "pushforward_premeasure"
        tally.check(name, rep.ok, lhs=rep.image_value, rhs=rep.scaled_value, C=C, **info)


# ---------------------------------------------------------- interval cases


def _shrink(rng, U):
    comps = []
    for a, b in U:
        if rng.random() < 0.25 and len(U) > 1:
            continue
        lo, hi = sorted(rng.uniform(a, b, size=2)) if b > a else (a, b)
        comps.append((float(lo), float(hi)))
    return iv.normalize(comps)


def _interval_case(rng, tally, case):
    m = int(rng.integers(2, 9))
    U = random_interval_union(rng, m, degenerate=0.15)
    sub = _shrink(rng, U)
    V = random_interval_union(rng, int(rng.integers(1, 5)), degenerate=0.15)
    alpha = 1.0 if rng.random() < 0.15 else float(rng.uniform(0.2, 2.0))
    beta = alpha + float(rng.uniform(0, 1.2))
    e1, e2 = sorted(rng.uniform(0.01, 1.2, size=2))
    info = dict(case=case, alpha=alpha)
    content, heps = iv.content_exact, iv.hausdorff_eps

    tally.le("diameter_monotone", iv.diameter_u(sub), iv.diameter_u(U), tol=0, **info)
    cU = content(U, alpha).value
    tally.le("content_self_cover", cU, iv.diameter_u(U) ** alpha, **info)
    tally.le("content_monotone", content(sub, alpha).value, cU, **info)
    tally.le("premeasure_monotone_in_set", heps(sub, alpha, e1).value, heps(U, alpha, e1).value, **info)
    W = iv.union(U, V)
    tally.le("content_subadditive", content(W, alpha).value,
             cU + content(V, alpha).value, **info)
    tally.le("premeasure_subadditive", heps(W, alpha, e1).value,
             heps(U, alpha, e1).value + heps(V, alpha, e1).value, **info)
    tally.le("premeasure_monotone_in_eps", heps(U, alpha, e2).value, heps(U, alpha, e1).value, **info)
    tally.le("content_below_premeasure", cU, heps(U, alpha, e1).value, **info)

    cut = int(rng.integers(1, len(U))) if len(U) > 1 else 0
    if cut:
        U1 = iv.IntervalUnion(U.components[:cut])
        U2 = iv.IntervalUnion(U.components[cut:])
        gap = U2.components[0][0] - U1.components[-1][1]
        eps = float(rng.uniform(0.1, 1.0)) * gap
        whole, p1, p2 = heps(U, alpha, eps), heps(U1, alpha, eps), heps(U2, alpha, eps)
        tally.check("separated_additivity_exact", whole.exact_value == p1.exact_value + p2.exact_value,
                    lhs=whole.value, rhs=p1.value + p2.value, eps=eps, **info)

    tally.le("exponent_comparison", heps(U, beta, e1).value,
             e1 ** (beta - alpha) * heps(U, alpha, e1).value, beta=beta, **info)
    tally.le("measure_dominates_premeasure", heps(U, alpha, e1).value,
             iv.hausdorff_measure(U, alpha).value, **info)

    c = float(rng.uniform(-3, 3)) or 1.0
    img = iv.affine_image(U, c, float(rng.uniform(-1, 1)))
    C = abs(c)
    tally.le("pushforward_content", content(img, alpha).value, C ** alpha * cU, C=C, **info)
    tally.le("pushforward_premeasure", heps(img, alpha, C * e1).value,
             C ** alpha * heps(U, alpha, e1).value, C=C, **info)


def inequality_suite(seed: int = 42, cases: int = 500) -> dict:
    tally = Tally()
    for case in range(cases):
        rng = _rng(seed, 5, case)
        (_finite_case if case % 2 == 0 else _interval_case)(rng, tally, case)
    return {"suite": "inequalities", "seed": seed, "cases": cases, **tally.as_dict()}


# ------------------------------------------------------------ coarea cases


def _random_blocks(rng, E, extra_pool):
    """A random cover of E: a random partition, some blocks padded with extra points."""
    labels = rng.integers(0, max(1, len(E) // 2) + 1, size=len(E))
    blocks = []
    for lab in np.unique(labels):
        b = {E[i] for i in np.flatnonzero(labels == lab)}
        if extra_pool and rng.random() < 0.3:
            b.add(int(rng.choice(extra_pool)))
        blocks.append(tuple(sorted(b)))
    return CoveringFamily(tuple(blocks))


def _coarea_finite_case(rng, tally, case):
    n = int(rng.integers(4, 13))
    cols = int(rng.integers(2, 5))
    pts = np.column_stack([rng.integers(0, cols, size=n) / cols, rng.random(n)])
    pts = np.unique(pts, axis=0)
    space = FiniteMetricSpace.from_points(pts)
    n = space.size
    if rng.random() < 0.5:
        f = MetricMap.real(space, pts[:, 0] * float(rng.uniform(0.5, 2.0)))
    else:
        f = MetricMap.real(space, space.distances[int(rng.integers(n))])
    E = _subset(rng, range(n), int(rng.integers(max(1, n // 2), n + 1)))
    pool = [x for x in range(n) if x not in E]
    alpha = 3.0 - 2.0 * float(rng.random())  # (1, 3]
    delta = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.01, 0.2))
    fams = [_random_blocks(rng, E, pool) for _ in range(3)]
    vals = f.values()
    ts = list(vals[list(E)]) + list(rng.uniform(vals.min() - 0.1, vals.max() + 0.1, size=50))
    ts = [float(t) for t in rng.choice(np.asarray(ts), size=50, replace=False)]
    info = dict(case=case, alpha=alpha, delta=delta)
    profiles = []
    for fam in fams:
        eps = max(fam.diameters(space)) * 1.01 + 1e-3
        rep = co.coarea_report(space, E, f, fam, alpha, ts, eps=eps, delta=delta, tol=TOL)
        tally.check("integral_bound_exact", rep.integral_ok, lhs=rep.integral, rhs=rep.C * rep.sum_cost, **info)
        for s in rep.samples:
            tally.check("slice_content_bound", s.ok, lhs=s.slice_value, rhs=s.h_t, t=s.t, **info)
            tally.check("slice_premeasure_bound", bool(s.eps_ok), lhs=s.eps_slice_value, rhs=s.h_t, t=s.t, **info)
        h = co.slice_profile(space, fam, f, alpha, delta)
        tally.check("profile_nonnegative", all(v >= 0 for v in h.point_values + h.seg_values), **info)
        profiles.append(h)
    phi = co.envelope(profiles, "inf")
    tail = co.envelope(profiles, "liminf_tail", 2)
    for t in ts:
        phi_t = phi.value_exact(t)
        tally.check("envelope_dominated", all(phi_t <= h.value_exact(t) for h in profiles), t=t, **info)
        Et = co.level_set(E, f, t)
        tally.le("slice_content_below_envelope", cover_value(space, Et, alpha - 1, delta).value,
                 float(phi_t), t=t, **info)
    tally.check("fatou_tail", tail.integral_exact() <= min(h.integral_exact() for h in profiles[1:]), **info)


def _coarea_interval_case(rng, tally, case):
    U = random_interval_union(rng, int(rng.integers(1, 7)), degenerate=0.1)
    alpha = 3.0 - 2.0 * float(rng.random())
    delta = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.001, 0.05))
    pieces = []
    for a, b in U:
        k = int(rng.integers(1, 4))
        cuts = np.sort(np.concatenate([[a, b], rng.uniform(a, b, size=k - 1)]))
        pieces.extend((float(x), float(y)) for x, y in zip(cuts, cuts[1:]))
    eps = max(b - a for a, b in pieces) * 1.01 + 1e-6
    ts = [float(t) for t in rng.uniform(-0.05, 1.05, size=50)]
    rep = co.coarea_report_intervals(U, pieces, alpha, ts, eps=eps, delta=delta, tol=TOL)
    info = dict(case=case, alpha=alpha, delta=delta)
    tally.check("integral_bound_exact", rep.integral_ok, lhs=rep.integral, rhs=rep.sum_cost, **info)
    for s in rep.samples:
        tally.check("slice_content_bound", s.ok, lhs=s.slice_value, rhs=s.h_t, t=s.t, **info)
        tally.check("slice_premeasure_bound", bool(s.eps_ok), lhs=s.eps_slice_value, rhs=s.h_t, t=s.t, **info)


def cantor_equality_case():
    """Identity on the first Cantor iterate, components as the family, alpha = 2."""
    U = cantor_set(1)
    return co.coarea_report_intervals(U, U.components, 2.0, [0.1, 0.5, 0.9])


def coarea_suite(seed: int = 42, cases: int = 200) -> dict:
    tally = Tally()
    for case in range(cases):
        rng = _rng(seed, 6, case)
        (_coarea_finite_case if case % 4 != 3 else _coarea_interval_case)(rng, tally, case)
    rep = cantor_equality_case()
    equal = rep.integral_ok and rep.slack == 0 and math.isclose(rep.integral, 2 / 9, rel_tol=1e-12)
    tally.check("cantor_identity_equality", equal, lhs=rep.integral, rhs=rep.sum_cost)
    return {"suite": "coarea", "seed": seed, "cases": cases, **tally.as_dict()}
