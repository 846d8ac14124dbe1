from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hauscover.generators import (CantorSpec, GeneratorSizeError, RandomSpec, cantor, cantor_set,
                                  random_interval_union, random_space, rng_from_seed, sample_points,
                                  sample_space)
from hauscover.intervals import IntervalUnion
from hauscover.metric import PreconditionError


def test_cantor_iterates():
    assert cantor_set(0).as_list() == [[0.0, 1.0]]
    assert cantor_set(1).components == ((0.0, 1 / 3), (2 / 3, 1.0))
    assert cantor_set(2).components == ((0.0, 1 / 9), (2 / 9, 1 / 3), (2 / 3, 7 / 9), (8 / 9, 1.0))


def test_cantor_endpoints_are_correctly_rounded():
    C = cantor_set(8)
    for k, (a, b) in enumerate(C):
        digits = [int(c) for c in np.base_repr(k, 2).zfill(8)]
        left = sum(Fraction(2 * d, 3 ** (i + 1)) for i, d in enumerate(digits))
        assert a == float(left)
        assert b == float(left + Fraction(1, 3 ** 8))


@pytest.mark.parametrize("ratio", [Fraction(1, 4), Fraction(2, 5), "0.3"])
def test_other_ratios(ratio):
    r = Fraction(ratio)
    C = cantor(CantorSpec(ratio=r, depth=3, origin=2.0, scale=3.0))
    assert len(C) == 8
    assert C.components[0][0] == 2.0 and C.components[-1][1] == 5.0
    assert C.total_length() == pytest.approx(3.0 * float(8 * r ** 3))


def test_cantor_preconditions():
    for bad in (Fraction(1, 2), Fraction(0), Fraction(3, 4)):
        with pytest.raises(PreconditionError):
            CantorSpec(ratio=bad)
    with pytest.raises(PreconditionError):
        CantorSpec(depth=-1)
    with pytest.raises(GeneratorSizeError):
        cantor(CantorSpec(depth=17))
    assert len(cantor(CantorSpec(depth=17, depth_cap=17))) == 2 ** 17


def test_sampling():
    unit = IntervalUnion(((0.0, 1.0),))
    s = sample_space(unit)
    assert s.size == 2 and s.d(0, 1) == 1.0
    assert sample_points(unit, "net", 0.5).tolist() == [0.0, 0.5, 1.0]
    assert sample_points(cantor_set(1)).tolist() == [0.0, 1 / 3, 2 / 3, 1.0]
    assert sample_points(IntervalUnion(((0.0, 0.0), (1.0, 1.0))), "net", 0.1).tolist() == [0.0, 1.0]
    with pytest.raises(PreconditionError):
        sample_points(IntervalUnion())
    with pytest.raises(PreconditionError):
        sample_points(unit, "net")
    with pytest.raises(PreconditionError):
        sample_points(unit, "random")


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.005, 0.5))
def test_net_pitch(seed, delta):
    U = random_interval_union(rng_from_seed(seed), 4)
    pts = sample_points(U, "net", delta)
    for a, b in U:
        inside = pts[(pts >= a) & (pts <= b)]
        assert inside[0] == a and inside[-1] == b
        assert np.all(np.diff(inside) <= delta * (1 + 1e-12))


def test_seeded_spaces_are_reproducible():
    a = random_space(RandomSpec(seed=123, n=9, dim=3))
    b = random_space(RandomSpec(seed=123, n=9, dim=3))
    c = random_space(RandomSpec(seed=124, n=9, dim=3))
    assert np.array_equal(a.distances, b.distances)
    assert not np.array_equal(a.distances, c.distances)
    s = random_space(RandomSpec(seed=5, n=6, synthetic=True))
    off = s.distances[~np.eye(6, dtype=bool)]
    assert off.min() >= 0.1 and off.max() < 1.0


def test_pcg64_stream_is_pinned():
    # first draws of PCG64 seeded with 42; guards against a silent generator change
    assert rng_from_seed(42).integers(0, 2**32, size=3).tolist() == \
        np.random.Generator(np.random.PCG64(42)).integers(0, 2**32, size=3).tolist()
    assert rng_from_seed(42).random() == pytest.approx(0.7739560485559633, abs=0)


def test_random_spec_preconditions():
    with pytest.raises(PreconditionError):
        RandomSpec(seed=0, n=0)
    with pytest.raises(PreconditionError):
        RandomSpec(seed=0, n=3, dim=0)


def test_random_unions():
    rng = rng_from_seed(1)
    for _ in range(20):
        U = random_interval_union(rng, 5, degenerate=0.5)
        assert 1 <= len(U) <= 5
        assert all(0 <= a <= b <= 1 for a, b in U)
