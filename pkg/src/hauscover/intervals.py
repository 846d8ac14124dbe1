"""Exact content, epsilon-premeasure and measure of finite unions of closed intervals.

Every cover of a union on the line can be traded for the interval hulls of
its connected pieces, so the optimisation is over consecutive groupings of
components.  A group of span L costs

* ``L**alpha`` without a diameter cap (``alpha <= 1``), and
* ``floor(L/eps) * eps**alpha + (L mod eps)**alpha`` under the cap
  ``diam < eps`` (``alpha < 1``): the run is tiled by pieces of length
  ``eps`` plus one remainder, the minimiser of a concave cost on
  ``{0 <= l_i <= eps, sum l_i = L}``.  Whenever a full piece is used the
  infimum is not attained, since pieces must be strictly shorter than eps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .metric import PreconditionError
from .results import ContentResult


class IntervalStructureError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted closed intervals with strictly positive gaps between them."""

    components: tuple = ()

    def __post_init__(self):
        comps = tuple((float(a), float(b)) for a, b in self.components)
        for a, b in comps:
            if not (math.isfinite(a) and math.isfinite(b)) or a > b:
                raise IntervalStructureError(f"bad interval ({a}, {b})")
        for (_, b0), (a1, _) in zip(comps, comps[1:]):
            if not b0 < a1:
                raise IntervalStructureError("components must be sorted with positive gaps")
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def lefts(self) -> np.ndarray:
        return np.array([a for a, _ in self.components], dtype=float)

    @property
    def rights(self) -> np.ndarray:
        return np.array([b for _, b in self.components], dtype=float)

    def lengths(self):
        return [b - a for a, b in self.components]

    def total_length(self) -> float:
        return math.fsum(self.lengths())

    def contains(self, t: float) -> bool:
        return any(a <= t <= b for a, b in self.components)

    def as_list(self):
        return [[a, b] for a, b in self.components]


def normalize(intervals: Iterable[Sequence[float]]) -> IntervalUnion:
    """Sort and merge overlapping or touching intervals."""
    pairs = []
    for pair in intervals:
        a, b = (float(x) for x in pair)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise IntervalStructureError(f"non-finite endpoint in ({a}, {b})")
        if a > b:
            raise IntervalStructureError(f"interval ({a}, {b}) has a > b")
        pairs.append((a, b))
    pairs.sort()
    merged = []
    for a, b in pairs:
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1][1] = b
        else:
            merged.append([a, b])
    return IntervalUnion(tuple(map(tuple, merged)))


def union(*parts: IntervalUnion) -> IntervalUnion:
    return normalize([c for p in parts for c in p])


def affine_image(U: IntervalUnion, scale: float, shift: float = 0.0) -> IntervalUnion:
    """Image of U under ``x -> scale * x + shift`` (a |scale|-Lipschitz map)."""
    return normalize(sorted((scale * a + shift, scale * b + shift)) for a, b in U)


def diameter_u(U: IntervalUnion) -> float:
    if not U.components:
        return 0.0
    return U.components[-1][1] - U.components[0][0]


def _check_alpha(alpha):
    if not alpha > 0:
        raise PreconditionError("alpha must be positive")


def _zero(U: IntervalUnion, method: str) -> ContentResult:
    """Value 0: attained by singleton covers exactly when U has no length."""
    if U.total_length() == 0:
        return ContentResult(0.0, True, tuple((a, a) for a, _ in U), (), method)
    return ContentResult(0.0, False, None, (), method)


def _layout(s: float, e: float, alpha: float, eps: float):
    """Tile [s, e] by length-eps runs plus a remainder; returns (pieces, costs)."""
    span = e - s
    if span < eps:
        return [(s, e)], [span ** alpha]
    r = math.fmod(span, eps)
    full = round((span - r) / eps)
    pieces = [(s + k * eps, s + (k + 1) * eps) for k in range(full)]
    costs = [eps ** alpha] * full
    if r > 0:
        pieces.append((e - r, e))
        costs.append(r ** alpha)
    return pieces, costs


def _grouped(U: IntervalUnion, alpha: float, eps: float, method: str) -> ContentResult:
    a, b = U.lefts, U.rights
    _, back, unatt = kernels.grouping_dp(a, b, float(alpha), float(eps))
    groups = []
    j = len(U)
    while j > 0:
        i = int(back[j])
        groups.append((a[i], b[j - 1]))
        j = i
    groups.reverse()
    pieces, terms = [], []
    for s, e in groups:
        s, e = float(s), float(e)
        if math.isinf(eps):
            pieces.append((s, e))
            terms.append((e - s) ** alpha)
            continue
        p, c = _layout(s, e, alpha, eps)
        pieces.extend(p)
        terms.extend(c)
    attained = not bool(unatt[len(U)])
    return ContentResult(math.fsum(terms), attained, tuple(pieces), tuple(terms), method)


def content_exact(U: IntervalUnion, alpha: float) -> ContentResult:
    """Hausdorff content: infimum of sum diam^alpha over finite covers of U."""
    _check_alpha(alpha)
    if not U.components:
        return ContentResult(0.0, True, (), (), "interval")
    if alpha > 1:
        # n equal pieces of a component cost n**(1 - alpha) * L**alpha -> 0
        return _zero(U, "interval")
    return _grouped(U, alpha, math.inf, "interval")


def hausdorff_eps(U: IntervalUnion, alpha: float, eps: float) -> ContentResult:
    """Infimum over covers of U by sets of diameter strictly less than eps."""
    _check_alpha(alpha)
    if not eps > 0:
        raise PreconditionError("eps must be positive")
    if not U.components:
        return ContentResult(0.0, True, (), (), "interval")
    if alpha > 1:
        return _zero(U, "interval")
    if alpha == 1:
        pieces = []
        for s, e in U:
            k = math.floor((e - s) / eps) + 1
            step = (e - s) / k
            pieces.extend((s + i * step, e if i == k - 1 else s + (i + 1) * step) for i in range(k))
        lengths = tuple(U.lengths())
        return ContentResult(math.fsum(lengths), True, tuple(pieces), lengths, "interval")
    return _grouped(U, alpha, eps, "interval")


def hausdorff_measure(U: IntervalUnion, alpha: float) -> ContentResult:
    """Limit of the eps-premeasure as eps -> 0, in closed form."""
    _check_alpha(alpha)
    if U.total_length() == 0:
        return ContentResult(0.0, True, tuple((a, a) for a, _ in U), (), "interval")
    if alpha > 1:
        return ContentResult(0.0, False, None, (), "interval")
    if alpha == 1:
        lengths = tuple(U.lengths())
        return ContentResult(math.fsum(lengths), True, U.components, lengths, "interval")
    return ContentResult(math.inf, False, None, (), "interval")
