"""Covering-cost optimisation on finite metric spaces.

A block costs ``max(diam(block), delta) ** alpha``.  With ``delta = 0`` this
is the literal cost and singletons are free; ``delta > 0`` treats each sample
as a cell of size delta of an underlying continuum.

Any cover of E can be cut down to a partition of E (intersect with E, then
assign each point to one block) without increasing any diameter, so the
exact search runs over set partitions.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .metric import FiniteMetricSpace, MetricMap, PreconditionError, diameter, lipschitz_constant
from .results import ContentResult

DEFAULT_CAP = 12


class CoverSizeError(ValueError):
    pass


def partition_cap() -> int:
    return int(os.environ.get("HAUSCOVER_CAP", DEFAULT_CAP))


def block_cost(diam: float, alpha: float, delta: float = 0.0) -> float:
    return max(diam, delta) ** alpha


@dataclass(frozen=True)
class CoveringFamily:
    """Blocks of point indices over one space."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise PreconditionError("covering blocks must be nonempty")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def covers(self, E) -> bool:
        return set(E) <= {x for b in self.blocks for x in b}

    def diameters(self, space: FiniteMetricSpace):
        return [diameter(space, b) for b in self.blocks]

    def costs(self, space, alpha, delta=0.0):
        return [block_cost(d, alpha, delta) for d in self.diameters(space)]

    def cost(self, space, alpha, delta=0.0) -> float:
        return math.fsum(self.costs(space, alpha, delta))

    def is_eps_family(self, space, eps) -> bool:
        return all(d < eps for d in self.diameters(space))

    def as_list(self):
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class CoverQuery:
    space: FiniteMetricSpace
    E: tuple
    alpha: float
    delta: float = 0.0
    eps: Optional[float] = None
    method: str = "exact"
    cap: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "E", tuple(sorted(set(int(x) for x in self.E))))
        if not self.alpha > 0:
            raise PreconditionError("alpha must be positive")
        if self.delta < 0:
            raise PreconditionError("delta must be nonnegative")
        if self.eps is not None and not self.eps > 0:
            raise PreconditionError("eps must be positive")
        if self.method not in ("exact", "greedy"):
            raise PreconditionError(f"unknown method {self.method!r}")

    @property
    def cap_eps(self) -> float:
        return math.inf if self.eps is None else float(self.eps)

    def resolved_cap(self) -> int:
        return partition_cap() if self.cap is None else int(self.cap)


def _result(q: CoverQuery, blocks, method) -> ContentResult:
    fam = CoveringFamily(blocks)
    terms = tuple(fam.costs(q.space, q.alpha, q.delta))
    return ContentResult(math.fsum(terms), True, fam, terms, method)


def exact_cover(q: CoverQuery) -> ContentResult:
    """Minimum cost over all set partitions of E (blocks under the eps cap).

    Ties go to the lexicographically smallest restricted growth string.
    """
    n = len(q.E)
    cap = q.resolved_cap()
    if n > cap:
        raise CoverSizeError(
            f"|E| = {n} exceeds the exact-search cap {cap}; use method='greedy' "
            "or raise the cap (HAUSCOVER_CAP)"
        )
    if n == 0:
        return ContentResult(0.0, True, CoveringFamily(()), (), "exact")
    idx = np.asarray(q.E, dtype=np.int64)
    sub = np.ascontiguousarray(q.space.distances[np.ix_(idx, idx)])
    table = kernels.subset_costs(sub, float(q.alpha), float(q.delta), q.cap_eps)
    _, rgs = kernels.best_partition(table, n)
    blocks = [[] for _ in range(int(rgs.max()) + 1)]
    for pos, b in enumerate(rgs):
        blocks[int(b)].append(q.E[pos])
    return _result(q, blocks, "exact")


def greedy_cover(q: CoverQuery) -> ContentResult:
    """Agglomerative upper bound.

    Starts from singletons and repeatedly merges the pair of blocks with the
    largest strict cost decrease (ties: smallest index pair, the merged block
    keeps the lower index).  Merges breaking the eps cap are never taken.
    """
    n = len(q.E)
    if n == 0:
        return ContentResult(0.0, True, CoveringFamily(()), (), "greedy")
    idx = np.asarray(q.E, dtype=np.int64)
    cross = q.space.distances[np.ix_(idx, idx)].copy()
    blocks = [[x] for x in q.E]
    diam = np.zeros(n)
    alpha, delta, eps = q.alpha, q.delta, q.cap_eps
    while len(blocks) > 1:
        k = len(blocks)
        merged = np.maximum(np.maximum(diam[:, None], diam[None, :]), cross)
        own = np.power(np.maximum(diam, delta), alpha)
        gain = own[:, None] + own[None, :] - np.power(np.maximum(merged, delta), alpha)
        ok = np.triu(np.ones((k, k), dtype=bool), 1) & (merged < eps)
        gain = np.where(ok, gain, -np.inf)
        flat = int(np.argmax(gain))
        if not gain.flat[flat] > 0:
            break
        i, j = divmod(flat, k)
        blocks[i] = sorted(blocks[i] + blocks[j])
        del blocks[j]
        diam[i] = merged[i, j]
        diam = np.delete(diam, j)
        cross[i] = np.maximum(cross[i], cross[j])
        cross[:, i] = cross[i]
        cross = np.delete(np.delete(cross, j, axis=0), j, axis=1)
        cross[i, i] = 0.0
    return _result(q, blocks, "greedy")


def cover(q: CoverQuery) -> ContentResult:
    return exact_cover(q) if q.method == "exact" else greedy_cover(q)


def cover_value(space, E, alpha, delta=0.0, eps=None, method="exact", cap=None) -> ContentResult:
    return cover(CoverQuery(space, tuple(E), alpha, delta, eps, method, cap))


def measure_profile(space, E, alpha, delta, eps_grid: Sequence[float], method="exact", cap=None):
    """``[(eps, ContentResult), ...]`` along a strictly descending eps grid.

    For the greedy method a cover found under a smaller cap is also valid for
    every larger cap, so each entry keeps the best cover from its own or any
    finer grid point; the values are then nondecreasing as eps shrinks, as
    they are for the exact method.  The last value is the measure estimate at
    resolution delta.
    """
    grid = [float(e) for e in eps_grid]
    if not grid:
        raise PreconditionError("eps grid must be nonempty")
    if any(not b < a for a, b in zip(grid, grid[1:])):
        raise PreconditionError("eps grid must be strictly descending")
    results = [cover_value(space, E, alpha, delta, e, method, cap) for e in grid]
    if method == "greedy":
        for i in range(len(results) - 2, -1, -1):
            if results[i + 1].value < results[i].value:
                results[i] = results[i + 1]
    return list(zip(grid, results))


@dataclass(frozen=True)
class PushforwardReport:
    C: float
    alpha: float
    eps: Optional[float]
    delta: float
    image_value: float
    scaled_value: float
    domain_value: float
    ok: bool
    method: str
    tol: float = field(default=0.0)

    def as_dict(self):
        return {
            "C": self.C,
            "alpha": self.alpha,
            "eps": self.eps,
            "delta": self.delta,
            "lhs": self.image_value,
            "rhs": self.scaled_value,
            "domain_value": self.domain_value,
            "ok": self.ok,
            "method": self.method,
        }


def pushforward_check(f: MetricMap, E, alpha, delta=0.0, eps=None, method="exact", cap=None,
                      tol: float = 0.0) -> PushforwardReport:
    """Compare the cover value of f(E) (cap C*eps, floor C*delta) with C**alpha
    times the value of E (cap eps, floor delta).

    C is the Lipschitz constant of f on E, which is all the inequality uses.
    A constant map (C = 0) has a one-point image whose value is 0 under any
    positive cap, so the image side drops the cap then.
    """
    E = tuple(sorted(set(E)))
    C = lipschitz_constant(f, E) if E else 0.0
    right = cover_value(f.domain, E, alpha, delta, eps, method, cap)
    img_eps = None if eps is None or C == 0 else C * eps
    left = cover_value(f.codomain, f.image(E), alpha, C * delta, img_eps, method, cap)
    rhs = C ** alpha * right.value
    ok = left.value <= rhs + tol * max(1.0, abs(rhs))
    return PushforwardReport(C, alpha, eps, delta, left.value, rhs, right.value, ok, method, tol)
