"""Finite metric spaces: validation, diameters, balls, neighborhoods, Lipschitz maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels

PointSet = tuple  # sorted, duplicate-free tuple of point indices


class MetricStructureError(ValueError):
    """Input is not a square finite real matrix (as opposed to an axiom violation)."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    magnitude: float

    def as_dict(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "magnitude": self.magnitude}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self):
        return sorted({v.axiom for v in self.violations})

    def as_dict(self):
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}


def _as_matrix(matrix) -> np.ndarray:
    try:
        d = np.array(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MetricStructureError(f"not a real matrix: {exc}") from None
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricStructureError(f"matrix must be square, got shape {d.shape}")
    if d.shape[0] == 0:
        raise MetricStructureError("matrix must have at least one row")
    if not np.all(np.isfinite(d)):
        raise MetricStructureError("matrix has non-finite entries")
    return d


def validate_metric(matrix, slack: float = 0.0) -> ValidationReport:
    """Check the metric axioms, listing each violation with a witness.

    Triangle violations are reported once per ordered pair ``(i, k)`` with the
    intermediate point giving the largest excess; for symmetric input only
    ``i < k`` is listed.  ``slack`` is an additive tolerance.
    """
    d = _as_matrix(matrix)
    n = d.shape[0]
    out = []
    for i in np.flatnonzero(np.abs(np.diag(d)) > slack):
        out.append(Violation("zero_diagonal", (int(i),), float(abs(d[i, i]))))
    off = ~np.eye(n, dtype=bool)
    for i, j in zip(*np.nonzero(off & (d < -slack))):
        out.append(Violation("nonnegativity", (int(i), int(j)), float(-d[i, j])))
    for i, j in zip(*np.nonzero(off & (d <= 0) & (d >= -slack))):
        # positive distance between distinct points; slack does not excuse zero
        out.append(Violation("positivity", (int(i), int(j)), float(-d[i, j])))
    asym = np.abs(d - d.T)
    symmetric = True
    for i, j in zip(*np.nonzero(np.triu(asym > slack, 1))):
        symmetric = False
        out.append(Violation("symmetry", (int(i), int(j)), float(asym[i, j])))
    excess, via = kernels.triangle_excess(d)
    bad = excess > slack
    if symmetric:
        bad &= np.triu(np.ones((n, n), dtype=bool), 1)
    for i, k in zip(*np.nonzero(bad)):
        out.append(Violation("triangle", (int(i), int(via[i, k]), int(k)), float(excess[i, k])))
    return ValidationReport(tuple(out))


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Points ``0..n-1`` with a distance matrix.

    Construction checks the pairwise axioms (zero diagonal, positivity,
    symmetry) in O(n^2); the O(n^3) triangle check is left to
    :func:`validate_metric`.  ``coords`` optionally records an embedding
    (real-line spaces keep their values there).
    """

    distances: np.ndarray
    coords: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        d = _as_matrix(self.distances)
        n = d.shape[0]
        if np.any(np.diag(d) != 0):
            raise MetricStructureError("distance matrix needs a zero diagonal")
        if n > 1 and np.any(d[~np.eye(n, dtype=bool)] <= 0):
            raise MetricStructureError("distinct points need positive distance")
        if np.any(d != d.T):
            raise MetricStructureError("distance matrix must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "distances", d)
        if self.coords is not None:
            c = np.array(self.coords, dtype=float)
            if c.ndim == 1:
                c = c[:, None]
            if c.shape[0] != n:
                raise MetricStructureError("coords must have one row per point")
            c.setflags(write=False)
            object.__setattr__(self, "coords", c)

    @property
    def size(self) -> int:
        return self.distances.shape[0]

    def __len__(self):
        return self.size

    def d(self, i, j) -> float:
        return float(self.distances[i, j])

    @classmethod
    def from_points(cls, points) -> "FiniteMetricSpace":
        """Euclidean distances between the rows of ``points``."""
        p = np.array(points, dtype=float)
        if p.ndim == 1:
            p = p[:, None]
        diff = p[:, None, :] - p[None, :, :]
        d = np.sqrt((diff ** 2).sum(axis=-1))
        d = np.triu(d, 1)
        return cls(d + d.T, coords=p)

    @classmethod
    def from_values(cls, values) -> "FiniteMetricSpace":
        """Distinct reals with ``d(u, v) = |u - v|``."""
        v = np.array(values, dtype=float).ravel()
        if len(np.unique(v)) != v.size:
            raise MetricStructureError("values must be distinct")
        d = np.abs(v[:, None] - v[None, :])
        return cls(d, coords=v[:, None])

    def all_points(self) -> PointSet:
        return tuple(range(self.size))

    @property
    def values(self) -> np.ndarray:
        """The real coordinate of a one-dimensional space."""
        if self.coords is None or self.coords.shape[1] != 1:
            raise PreconditionError("space has no real-line coordinates")
        return self.coords[:, 0]


def point_set(space: FiniteMetricSpace, members: Iterable[int]) -> PointSet:
    out = tuple(sorted(set(int(m) for m in members)))
    if out and (out[0] < 0 or out[-1] >= space.size):
        raise PreconditionError(f"point index out of range for a space of size {space.size}")
    return out


def diameter(space: FiniteMetricSpace, E: Sequence[int]) -> float:
    """Largest pairwise distance in E; 0 for the empty set and singletons."""
    idx = np.asarray(E, dtype=np.int64)
    if idx.size < 2:
        return 0.0
    return float(space.distances[np.ix_(idx, idx)].max())


def dist_to_set(space: FiniteMetricSpace, x: int, A: Sequence[int]) -> float:
    if len(A) == 0:
        raise PreconditionError("distance to a set needs a nonempty set")
    return float(space.distances[x, np.asarray(A, dtype=np.int64)].min())


def ball(space: FiniteMetricSpace, p: int, r: float, kind: str = "open") -> PointSet:
    if not r > 0:
        raise PreconditionError("ball radius must be positive")
    row = space.distances[p]
    if kind == "open":
        hit = row < r
    elif kind == "closed":
        hit = row <= r
    else:
        raise PreconditionError(f"unknown ball kind {kind!r}")
    return tuple(int(i) for i in np.flatnonzero(hit))


def neighborhood(space: FiniteMetricSpace, A: Sequence[int], r: float) -> PointSet:
    """Points at distance less than r from A (the open r-neighborhood)."""
    if len(A) == 0:
        raise PreconditionError("neighborhood needs a nonempty set")
    if not r > 0:
        raise PreconditionError("neighborhood radius must be positive")
    near = space.distances[np.asarray(A, dtype=np.int64)].min(axis=0)
    return tuple(int(i) for i in np.flatnonzero(near < r))


@dataclass(frozen=True, eq=False)
class MetricMap:
    """A map between finite spaces given by a per-point image index."""

    domain: FiniteMetricSpace
    codomain: FiniteMetricSpace
    assignment: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignment)
        if len(a) != self.domain.size:
            raise PreconditionError("assignment must cover every domain point")
        if any(x < 0 or x >= self.codomain.size for x in a):
            raise PreconditionError("assignment points outside the codomain")
        object.__setattr__(self, "assignment", a)

    @classmethod
    def real(cls, domain: FiniteMetricSpace, values) -> "MetricMap":
        """A real-valued function on ``domain``; codomain is its sorted value set."""
        v = np.array(values, dtype=float).ravel()
        if v.size != domain.size:
            raise PreconditionError("need one value per domain point")
        uniq, inv = np.unique(v, return_inverse=True)
        return cls(domain, FiniteMetricSpace.from_values(uniq), tuple(inv.tolist()))

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    def image(self, E: Iterable[int]) -> PointSet:
        return tuple(sorted({self.assignment[x] for x in E}))

    def values(self) -> np.ndarray:
        """Real value at every domain point (real-line codomains only)."""
        return self.codomain.values[np.asarray(self.assignment, dtype=np.int64)]


def lipschitz_constant(f: MetricMap, E: Optional[Sequence[int]] = None) -> float:
    """Smallest C with rho(f(x), f(y)) <= C d(x, y) over pairs of E (default: all)."""
    idx = np.arange(f.domain.size) if E is None else np.asarray(E, dtype=np.int64)
    if idx.size == 0:
        raise PreconditionError("Lipschitz constant needs at least one point")
    if idx.size == 1:
        return 0.0
    img = np.asarray(f.assignment, dtype=np.int64)[idx]
    rho = f.codomain.distances[np.ix_(img, img)]
    d = f.domain.distances[np.ix_(idx, idx)]
    iu = np.triu_indices(idx.size, 1)
    return float((rho[iu] / d[iu]).max())
