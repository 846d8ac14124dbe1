"""Test sets and spaces: Cantor unions, samplers, seeded random metrics.

Randomness comes from numpy's PCG64 bit generator seeded with the caller's
64-bit integer; PCG64 output is specified and platform independent, so a
seed reproduces the same space bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .intervals import IntervalUnion, normalize
from .metric import FiniteMetricSpace, PreconditionError

DEFAULT_DEPTH_CAP = 16


class GeneratorSizeError(ValueError):
    pass


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


@dataclass(frozen=True)
class CantorSpec:
    ratio: Fraction = Fraction(1, 3)
    depth: int = 0
    origin: float = 0.0
    scale: float = 1.0
    depth_cap: int = DEFAULT_DEPTH_CAP

    def __post_init__(self):
        r = Fraction(self.ratio)
        if not 0 < r < Fraction(1, 2):
            raise PreconditionError("Cantor ratio must lie in (0, 1/2)")
        if self.depth < 0:
            raise PreconditionError("Cantor depth must be nonnegative")
        if not self.scale > 0:
            raise PreconditionError("Cantor scale must be positive")
        object.__setattr__(self, "ratio", r)


def cantor(spec: CantorSpec) -> IntervalUnion:
    """Keep the two outer sub-intervals of relative length ``ratio``, ``depth`` times.

    Endpoints are computed exactly and rounded once.
    """
    if spec.depth > spec.depth_cap:
        raise GeneratorSizeError(f"depth {spec.depth} exceeds the cap {spec.depth_cap}")
    r = spec.ratio
    comps = [(Fraction(0), Fraction(1))]
    for _ in range(spec.depth):
        nxt = []
        for a, b in comps:
            step = r * (b - a)
            nxt.append((a, a + step))
            nxt.append((b - step, b))
        comps = nxt
    o, s = Fraction(spec.origin), Fraction(spec.scale)
    return IntervalUnion(tuple((float(o + s * a), float(o + s * b)) for a, b in comps))


def cantor_set(depth: int, ratio=Fraction(1, 3)) -> IntervalUnion:
    return cantor(CantorSpec(ratio=ratio, depth=depth))


def sample_points(U: IntervalUnion, mode: str = "endpoints", delta: Optional[float] = None) -> np.ndarray:
    """Sorted sample of U: all component endpoints, or a grid of pitch <= delta per component."""
    if not U.components:
        raise PreconditionError("cannot sample an empty union")
    pts = []
    if mode == "endpoints":
        for a, b in U:
            pts.extend((a, b) if b > a else (a,))
    elif mode == "net":
        if delta is None or not delta > 0:
            raise PreconditionError("net sampling needs delta > 0")
        for a, b in U:
            if b == a:
                pts.append(a)
                continue
            k = math.ceil((b - a) / delta)
            grid = np.linspace(a, b, k + 1)
            grid[0], grid[-1] = a, b
            pts.extend(grid.tolist())
    else:
        raise PreconditionError(f"unknown sampling mode {mode!r}")
    return np.unique(np.array(pts, dtype=float))


def sample_space(U: IntervalUnion, mode: str = "endpoints", delta: Optional[float] = None) -> FiniteMetricSpace:
    return FiniteMetricSpace.from_values(sample_points(U, mode, delta))


def shortest_path_repair(d: np.ndarray) -> np.ndarray:
    """Lower entries to shortest-path lengths until no triangle is violated.

    Passes repeat to a fixpoint, so the result satisfies the triangle
    inequality exactly as evaluated in floating point.
    """
    d = np.array(d, dtype=float)
    n = d.shape[0]
    changed = True
    while changed:
        changed = False
        for k in range(n):
            cand = d[:, k, None] + d[None, k, :]
            upd = cand < d
            if upd.any():
                d = np.where(upd, cand, d)
                changed = True
    return d


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    n: int
    dim: Optional[int] = 2
    synthetic: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("need at least one point")
        if not self.synthetic and (self.dim is None or self.dim < 1):
            raise PreconditionError("ambient mode needs dim >= 1")


def random_space(spec: RandomSpec) -> FiniteMetricSpace:
    """Seeded uniform points in the unit cube, or a synthetic repaired metric.

    Synthetic mode draws symmetric weights in [0.1, 1) and repairs them by
    all-pairs shortest paths.  Euclidean distances also pass through the
    repair, which only removes rounding-level triangle defects.
    """
    rng = rng_from_seed(spec.seed)
    n = spec.n
    if spec.synthetic:
        w = np.triu(rng.uniform(0.1, 1.0, size=(n, n)), 1)
        return FiniteMetricSpace(shortest_path_repair(w + w.T))
    pts = rng.random((n, spec.dim))
    d = FiniteMetricSpace.from_points(pts).distances
    return FiniteMetricSpace(shortest_path_repair(d), coords=pts)


def random_interval_union(rng: np.random.Generator, m: int, lo: float = 0.0, hi: float = 1.0,
                          degenerate: float = 0.0) -> IntervalUnion:
    """m components with endpoints drawn uniformly; a fraction collapse to points."""
    while True:
        x = np.sort(rng.uniform(lo, hi, size=2 * m))
        if np.all(np.diff(x) > 0):
            break
    comps = []
    for a, b in zip(x[0::2], x[1::2]):
        if degenerate and rng.random() < degenerate:
            b = a
        comps.append((float(a), float(b)))
    return normalize(comps)
