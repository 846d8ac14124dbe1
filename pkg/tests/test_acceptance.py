"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import math
import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from hauscover import checks
from hauscover.covering import CoverQuery, exact_cover
from hauscover.generators import RandomSpec, cantor_set, random_interval_union, random_space, rng_from_seed
from hauscover.intervals import IntervalUnion, content_exact, hausdorff_eps, hausdorff_measure
from hauscover.metric import validate_metric

import oracles

D = math.log(2) / math.log(3)


def test_c1_metric_validator(criterion):
    t0 = time.perf_counter()
    clean_fail, missed = 0, 0
    for seed in range(200):
        rng = rng_from_seed(10_000 + seed)
        n = int(rng.integers(2, 31))
        space = random_space(RandomSpec(seed=seed, n=n, synthetic=True))
        if not validate_metric(space.distances).ok:
            clean_fail += 1
        d = space.distances.copy()
        i, j = rng.choice(n, size=2, replace=False)
        d[i, j] += 0.5 * d.max()
        if validate_metric(d).ok:
            missed += 1
    elapsed = time.perf_counter() - t0
    ok = clean_fail == 0 and missed == 0 and elapsed < 5.0
    criterion("C1 metric validator", ok, f"false alarms={clean_fail} missed={missed} {elapsed:.2f}s")
    assert ok


def _c2_cases():
    for seed in range(100):
        rng = rng_from_seed(20_000 + seed)
        n = int(rng.integers(2, 9))
        space = random_space(RandomSpec(seed=seed, n=n, synthetic=bool(seed % 2), dim=2))
        E = tuple(sorted(int(x) for x in rng.choice(n, size=int(rng.integers(1, min(n, 6) + 1)),
                                                        replace=False)))
        diam = [space.d(a, b) for a in E for b in E]
        caps = [None, float(np.median(diam)) if len(E) > 1 else 1.0, max(diam) * 1.5 + 0.01]
        yield space, E, caps


def test_c2_partition_reduction_oracle(criterion):
    checked, bad = 0, []
    for space, E, caps in _c2_cases():
        for delta in (0.0, 0.1):
            for alpha in (0.5, 1.0, 2.0):
                for eps in caps:
                    if eps is not None and delta > 0 and eps <= delta:
                        continue
                    ref = oracles.raw_cover_value(space.distances, E, alpha, delta, eps)
                    got = exact_cover(CoverQuery(space, E, alpha, delta, eps))
                    checked += 1
                    if ref is None or got.exact_value != ref:
                        bad.append((E, alpha, delta, eps, ref, got.value))
    ok = not bad
    criterion("C2 partition search == raw cover enumeration (exact)", ok,
              f"{checked} queries, {len(bad)} mismatches")
    assert ok, bad[:3]


def _grid_aligned_union(rng, h):
    m = int(rng.integers(1, 11))
    k = np.sort(rng.choice(int(round(1 / h)) + 1, size=2 * m, replace=False))
    comps = []
    for a, b in zip(k[::2], k[1::2]):
        comps.append((a * h, (a if rng.random() < 0.1 else b) * h))
    return IntervalUnion(tuple(comps))


def test_c3_interval_dp_oracles(criterion):
    worst_enum, worst_lo, worst_hi, worst_closed = 0.0, 0.0, 0.0, 0.0
    h = 2.0 ** -10
    for seed in range(100):
        rng = rng_from_seed(30_000 + seed)
        U = random_interval_union(rng, int(rng.integers(1, 11)), degenerate=0.1)
        for alpha in (float(rng.uniform(0.05, 1.0)), 0.5, 1.0):
            ref = oracles.grouping_enumeration(U.components, alpha)
            worst_enum = max(worst_enum, abs(content_exact(U, alpha).value - ref))
        alpha = float(rng.uniform(0.1, 0.95))
        eps = float(rng.uniform(0.02, 0.5))
        v = hausdorff_eps(U, alpha, eps).value
        lo, hi = oracles.premeasure_sandwich(U.components, alpha, eps, h)
        worst_lo = max(worst_lo, lo - v)
        worst_hi = max(worst_hi, v - hi)
        # grid-aligned twin: the sandwich closes
        V = _grid_aligned_union(rng, h)
        eps_g = int(rng.integers(8, 512)) * h
        vg = hausdorff_eps(V, alpha, eps_g).value
        lo_g, hi_g = oracles.premeasure_sandwich(V.components, alpha, eps_g, h)
        worst_closed = max(worst_closed, abs(vg - lo_g), abs(vg - hi_g))
    ok = worst_enum <= 1e-12 and worst_lo <= 1e-6 and worst_hi <= 1e-6 and worst_closed <= 1e-6
    criterion("C3 interval DP vs enumeration and grid sandwich", ok,
              f"enum err={worst_enum:.1e}, below-lower={worst_lo:.1e}, above-upper={worst_hi:.1e}, "
              f"aligned err={worst_closed:.1e}")
    assert ok


def test_c4_cantor_closed_forms(criterion):
    t0 = time.perf_counter()
    errs = []
    for k in range(9):
        C = cantor_set(k)
        errs.append(abs(content_exact(C, 1.0).value - (2 / 3) ** k))
        errs.append(abs(content_exact(C, D).value - 1.0))
        for eps in (1.0, 0.1, 0.01):
            errs.append(abs(hausdorff_eps(C, 1.0, eps).value - (2 / 3) ** k))
        errs.append(abs(hausdorff_measure(C, 2.0).value))
    elapsed = time.perf_counter() - t0
    ok = max(errs) <= 1e-9 and elapsed < 10.0
    criterion("C4 Cantor closed forms k=0..8", ok, f"max err={max(errs):.1e} {elapsed:.2f}s")
    assert ok


def test_c5_inequality_suite(criterion):
    rep = checks.inequality_suite(42, 500)
    ok = rep["violations"] == 0
    criterion("C5 inequality suite (500 cases)", ok,
              f"{sum(p['checked'] for p in rep['properties'].values())} checks, "
              f"{rep['violations']} violations")
    assert ok, rep["details"]


def test_c6_coarea_suite(criterion):
    rep = checks.coarea_suite(42, 200)
    eq = rep["properties"]["cantor_identity_equality"]
    ok = rep["violations"] == 0 and eq["violations"] == 0
    criterion("C6 coarea suite (200 cases + Cantor equality 2/9)", ok,
              f"{sum(p['checked'] for p in rep['properties'].values())} checks, "
              f"{rep['violations']} violations")
    assert ok, rep["details"]
    cantor = checks.cantor_equality_case()
    assert cantor.integral == cantor.sum_cost
    assert Fraction(cantor.integral).limit_denominator(100) == Fraction(2, 9)


def test_c7_dimension_transition(criterion):
    C7 = cantor_set(7)

    def below_one(alpha):
        return content_exact(C7, alpha).value < 1.0 - 1e-12

    lo, hi = 0.1, 1.0
    assert not below_one(lo) and below_one(hi)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if below_one(mid):
            hi = mid
        else:
            lo = mid
    found = 0.5 * (lo + hi)
    ok = abs(found - D) <= 1e-3
    criterion("C7 dimension transition on C_7", ok, f"bisection {found:.6f} vs {D:.6f}")
    assert ok


def test_c8_performance(criterion):
    space = random_space(RandomSpec(seed=8, n=10))
    t0 = time.perf_counter()
    exact_cover(CoverQuery(space, tuple(range(10)), 0.7, 0.05))
    t_exact = time.perf_counter() - t0
    C10 = cantor_set(10)
    assert len(C10.components) == 1024
    t0 = time.perf_counter()
    content_exact(C10, 0.5)
    hausdorff_eps(C10, 0.5, 0.01)
    t_dp = time.perf_counter() - t0
    space12 = random_space(RandomSpec(seed=12, n=12))
    t0 = time.perf_counter()
    exact_cover(CoverQuery(space12, tuple(range(12)), 0.7, 0.05))
    t_bell12 = time.perf_counter() - t0
    t0 = time.perf_counter()
    checks.inequality_suite(7, 500)
    checks.coarea_suite(7, 200)
    t_suite = time.perf_counter() - t0
    ok = t_exact < 60 and t_dp < 1 and t_suite < 600
    criterion("C8 performance", ok,
              f"exact |E|=10 {t_exact:.3f}s, DP 1024 comps {t_dp:.3f}s, "
              f"|E|=12 {t_bell12:.2f}s, check suites {t_suite:.1f}s")
    assert ok


@pytest.mark.slow
def test_c9_determinism(criterion, tmp_path):
    env = dict(os.environ)
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        proc = subprocess.run([sys.executable, "-m", "hauscover", "check", "--seed", "42", "--out", str(path)],
                              env=env, capture_output=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    proc = subprocess.run([sys.executable, "-m", "hauscover", "check", "--seed", "42"],
                          env=env, capture_output=True)
    outs.append(proc.stdout)
    ok = outs[0] == outs[1] == outs[2]
    criterion("C9 determinism of `check --seed 42`", ok, f"{len(outs[0])} bytes")
    assert ok
