import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hauscover.generators import cantor_set
from hauscover.intervals import (IntervalStructureError, IntervalUnion, affine_image, content_exact,
                                 diameter_u, hausdorff_eps, hausdorff_measure, normalize, union)
from hauscover.metric import PreconditionError

import oracles

THIRD = 1 / 3


@st.composite
def unions(draw, max_m=8, degenerate=True):
    m = draw(st.integers(1, max_m))
    xs = draw(st.lists(st.floats(0, 1, allow_nan=False), min_size=2 * m, max_size=2 * m, unique=True))
    xs.sort()
    comps = []
    for a, b in zip(xs[::2], xs[1::2]):
        if degenerate and draw(st.booleans()) and draw(st.booleans()):
            b = a
        comps.append((a, b))
    return IntervalUnion(tuple(comps))


def covers(pieces, U):
    for a, b in U:
        reach = a
        for lo, hi in sorted(pieces):
            if lo <= reach and hi >= reach:
                reach = max(reach, hi)
        if reach < b:
            return False
        if not any(lo <= a <= hi for lo, hi in pieces):
            return False
    return True


# ---------------------------------------------------------------- containers


@pytest.mark.parametrize("raw, expected", [
    ([(0, 1)], [(0, 1)]),
    ([(0, 0.5), (0.5, 1)], [(0, 1)]),
    ([(2, 3), (0, 1), (0.5, 1.5)], [(0, 1.5), (2, 3)]),
    ([], []),
])
def test_normalize(raw, expected):
    assert normalize(raw).as_list() == [list(c) for c in expected]


@pytest.mark.parametrize("bad", [[(1, 0)], [(0, math.inf)], [(math.nan, 1)]])
def test_normalize_rejects(bad):
    with pytest.raises(IntervalStructureError):
        normalize(bad)


def test_union_requires_strict_gaps():
    with pytest.raises(IntervalStructureError):
        IntervalUnion(((0, 1), (1, 2)))
    with pytest.raises(IntervalStructureError):
        IntervalUnion(((2, 3), (0, 1)))


def test_union_helpers():
    U = union(normalize([(0, 1)]), normalize([(0.5, 2), (3, 3)]))
    assert U.as_list() == [[0, 2], [3, 3]]
    assert U.contains(3) and U.contains(1.5) and not U.contains(2.5)
    assert U.total_length() == 2
    assert affine_image(U, -2, 1).as_list() == [[-5, -5], [-3, 1]]


@pytest.mark.parametrize("U, d", [
    (IntervalUnion(), 0.0),
    (IntervalUnion(((0, 1),)), 1.0),
    (IntervalUnion(((0, THIRD), (2 * THIRD, 1))), 1.0),
])
def test_diameter(U, d):
    assert diameter_u(U) == d


# ---------------------------------------------------------------- content


def test_content_examples():
    one = IntervalUnion(((0, 1),))
    c1 = IntervalUnion(((0, THIRD), (2 * THIRD, 1)))
    assert content_exact(one, 1).value == 1
    assert content_exact(c1, 1).value == pytest.approx(2 / 3, abs=1e-15)
    assert content_exact(c1, 0.5).value == 1.0
    res = content_exact(c1, 0.5)
    assert res.attained and res.witness == ((0, 1),)
    assert content_exact(IntervalUnion(), 0.7).value == 0.0


def test_content_above_one_is_zero():
    res = content_exact(IntervalUnion(((0, 1),)), 2)
    assert res.value == 0.0 and not res.attained
    pts = content_exact(IntervalUnion(((0, 0), (1, 1))), 2)
    assert pts.value == 0.0 and pts.attained


def test_alpha_must_be_positive():
    with pytest.raises(PreconditionError):
        content_exact(IntervalUnion(((0, 1),)), 0)
    with pytest.raises(PreconditionError):
        hausdorff_eps(IntervalUnion(((0, 1),)), 1, 0)


@settings(max_examples=150, deadline=None)
@given(unions(), st.floats(0.05, 1.0))
def test_content_matches_grouping_enumeration(U, alpha):
    res = content_exact(U, alpha)
    assert res.value == pytest.approx(oracles.grouping_enumeration(U.components, alpha), abs=1e-12)
    assert res.attained
    assert covers(res.witness, U)
    assert math.fsum((b - a) ** alpha for a, b in res.witness) == pytest.approx(res.value, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(unions(), st.floats(0.05, 1.0))
def test_content_bounds(U, alpha):
    v = content_exact(U, alpha).value
    assert v <= diameter_u(U) ** alpha + 1e-12
    # sum of l_i**alpha >= (sum of l_i)**alpha for alpha <= 1
    assert v >= U.total_length() ** alpha - 1e-12


# ---------------------------------------------------------------- premeasure


def test_premeasure_examples():
    pts = IntervalUnion(((0, 0), (0.5, 0.5), (1, 1)))
    for alpha in (0.3, 1.0, 2.0):
        r = hausdorff_eps(pts, alpha, 0.1)
        assert r.value == 0.0 and r.attained
    unit = IntervalUnion(((0, 1),))
    r = hausdorff_eps(unit, 1, 0.5)
    assert r.value == 1.0 and r.attained
    assert all(b - a < 0.5 for a, b in r.witness) and covers(r.witness, unit)
    r = hausdorff_eps(unit, 0.5, 0.6)
    assert r.value == pytest.approx(0.6 ** 0.5 + 0.4 ** 0.5, abs=1e-15)
    assert r.value == pytest.approx(1.4070522, abs=1e-7)
    assert not r.attained


def test_premeasure_attained_when_no_piece_hits_the_cap():
    r = hausdorff_eps(cantor_set(2), 0.5, 0.2)
    assert r.attained
    assert r.value == pytest.approx(4 * (1 / 9) ** 0.5)


@settings(max_examples=80, deadline=None)
@given(unions(max_m=5), st.floats(0.1, 0.95), st.integers(16, 700))
def test_premeasure_inside_grid_sandwich(U, alpha, eps_steps):
    h = 2.0 ** -10
    eps = eps_steps * h * 1.003
    v = hausdorff_eps(U, alpha, eps).value
    lo, hi = oracles.premeasure_sandwich(U.components, alpha, eps, h)
    assert lo - 1e-9 <= v <= hi + 1e-9
    assert v == pytest.approx(oracles.lattice_upper(U.components, alpha, eps, 1 / 256), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.floats(0.1, 0.95))
def test_premeasure_exact_on_grid_aligned_unions(data, alpha):
    h = 2.0 ** -9
    ks = sorted(data.draw(st.lists(st.integers(0, 512), min_size=2, max_size=10, unique=True)))
    if len(ks) % 2:
        ks = ks[:-1]
    comps = tuple((a * h, b * h) for a, b in zip(ks[::2], ks[1::2]))
    eps = data.draw(st.integers(4, 512)) * h
    v = hausdorff_eps(IntervalUnion(comps), alpha, eps).value
    lo, hi = oracles.premeasure_sandwich(comps, alpha, eps, h)
    assert lo == pytest.approx(hi, abs=1e-12)
    assert v == pytest.approx(lo, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(unions(), st.floats(0.1, 1.0), st.floats(0.01, 1.5), st.floats(0.01, 1.5))
def test_premeasure_monotone_in_eps_and_dominates_content(U, alpha, e1, e2):
    e_small, e_big = sorted((e1, e2))
    small = hausdorff_eps(U, alpha, e_small)
    big = hausdorff_eps(U, alpha, e_big)
    assert big.value <= small.value + 1e-12
    assert content_exact(U, alpha).value <= big.value + 1e-12
    assert math.isclose(small.value, math.fsum(small.terms), abs_tol=0)
    assert all(b - a <= e_small * (1 + 1e-12) for a, b in small.witness)
    assert covers(small.witness, U)


def test_large_eps_recovers_content():
    C = cantor_set(4)
    for alpha in (0.4, 0.63, 1.0):
        assert hausdorff_eps(C, alpha, 10.0).value == pytest.approx(content_exact(C, alpha).value, abs=1e-14)


# ---------------------------------------------------------------- measure


@pytest.mark.parametrize("U, alpha, value", [
    (IntervalUnion(((0, 1),)), 2, 0.0),
    (IntervalUnion(((0, 1),)), 1, 1.0),
    (IntervalUnion(((0, 0), (1, 1))), 0.5, 0.0),
    (IntervalUnion(((0, 1),)), 0.5, math.inf),
])
def test_measure_closed_forms(U, alpha, value):
    assert hausdorff_measure(U, alpha).value == value


def test_measure_dominates_premeasures():
    C = cantor_set(3)
    for alpha in (0.5, 1.0, 1.5):
        m = hausdorff_measure(C, alpha).value
        for eps in (1.0, 0.1, 0.01, 0.001):
            assert hausdorff_eps(C, alpha, eps).value <= m + 1e-12


def test_cantor_content_at_similarity_dimension():
    d = math.log(2) / math.log(3)
    for k in range(9):
        assert content_exact(cantor_set(k), d).value == pytest.approx(1.0, abs=1e-9)
    assert content_exact(cantor_set(5), d + 0.05).value < 1
    assert content_exact(cantor_set(5), d - 0.05).value == 1.0


def test_thousand_components_are_fast():
    import time
    C = cantor_set(10)
    t0 = time.perf_counter()
    content_exact(C, 0.5)
    hausdorff_eps(C, 0.5, 0.003)
    assert time.perf_counter() - t0 < 1.0


def test_affine_scaling_of_content():
    rng = np.random.default_rng(0)
    for _ in range(20):
        U = normalize([tuple(sorted(rng.random(2))) for _ in range(4)])
        s = float(rng.uniform(0.2, 3))
        alpha = float(rng.uniform(0.2, 1))
        assert content_exact(affine_image(U, s, 1.0), alpha).value == pytest.approx(
            s ** alpha * content_exact(U, alpha).value, rel=1e-9)
