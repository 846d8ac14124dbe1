"""Slicing by a Lipschitz real function: level sets, interval hulls, the step
function ``h(t) = sum (diam A)**(alpha-1) * [t in I(A)]``, and its integral.

Step functions keep breakpoints and values as exact rationals (every float
is one), so integrals and pointwise minima carry no rounding; only the
weights ``diam**(alpha-1)`` are rounded, once, when they are computed.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .covering import CoveringFamily, cover_value, partition_cap
from .intervals import IntervalUnion, content_exact as interval_content, hausdorff_eps as interval_eps
from .metric import FiniteMetricSpace, MetricMap, PreconditionError, diameter
from .results import encode_float

ZERO = Fraction(0)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise constant function with closed-interval point semantics.

    ``point_values[k]`` is the value at ``breakpoints[k]``; ``seg_values[k]``
    the value on the open segment between breakpoints k and k+1.  The
    function vanishes outside ``[breakpoints[0], breakpoints[-1]]``.
    """

    breakpoints: tuple = ()
    point_values: tuple = ()
    seg_values: tuple = ()

    def __post_init__(self):
        bp = tuple(Fraction(x) for x in self.breakpoints)
        pv = tuple(Fraction(x) for x in self.point_values)
        sv = tuple(Fraction(x) for x in self.seg_values)
        if any(not a < b for a, b in zip(bp, bp[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")
        if len(pv) != len(bp) or len(sv) != max(len(bp) - 1, 0):
            raise PreconditionError("value arrays do not match the breakpoints")
        if any(v < 0 for v in pv + sv):
            raise PreconditionError("step function values must be nonnegative")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "point_values", pv)
        object.__setattr__(self, "seg_values", sv)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls()

    @classmethod
    def from_indicators(cls, items) -> "StepFunction":
        """Sum of ``weight * indicator([lo, hi])`` over ``(lo, hi, weight)`` items."""
        items = [(Fraction(lo), Fraction(hi), Fraction(w)) for lo, hi, w in items]
        if any(lo > hi for lo, hi, _ in items):
            raise PreconditionError("indicator interval has lo > hi")
        bp = sorted({x for lo, hi, _ in items for x in (lo, hi)})
        pos = {x: k for k, x in enumerate(bp)}
        # difference arrays over breakpoint indices
        pd = [ZERO] * (len(bp) + 1)
        sd = [ZERO] * (len(bp) + 1)
        for lo, hi, w in items:
            i, j = pos[lo], pos[hi]
            pd[i] += w
            pd[j + 1] -= w
            if j > i:
                sd[i] += w
                sd[j] -= w
        pv, sv, acc_p, acc_s = [], [], ZERO, ZERO
        for k in range(len(bp)):
            acc_p += pd[k]
            acc_s += sd[k]
            pv.append(acc_p)
            if k < len(bp) - 1:
                sv.append(acc_s)
        return cls(tuple(bp), tuple(pv), tuple(sv))

    def value_exact(self, t) -> Fraction:
        t = Fraction(t)
        bp = self.breakpoints
        k = bisect.bisect_left(bp, t)
        if k < len(bp) and bp[k] == t:
            return self.point_values[k]
        if k == 0 or k == len(bp):
            return ZERO
        return self.seg_values[k - 1]

    def __call__(self, t) -> float:
        return float(self.value_exact(t))

    def integral_exact(self) -> Fraction:
        bp = self.breakpoints
        return sum((v * (b - a) for v, a, b in zip(self.seg_values, bp, bp[1:])), ZERO)

    def simplified(self) -> "StepFunction":
        """Drop breakpoints across which nothing changes."""
        bp, pv, sv = self.breakpoints, self.point_values, self.seg_values
        keep = []
        for k in range(len(bp)):
            left = sv[k - 1] if k > 0 else ZERO
            right = sv[k] if k < len(sv) else ZERO
            if not (pv[k] == left == right):
                keep.append(k)
        nbp = [bp[k] for k in keep]
        npv = [pv[k] for k in keep]
        nsv = [self.value_exact((a + b) / 2) for a, b in zip(nbp, nbp[1:])]
        return StepFunction(tuple(nbp), tuple(npv), tuple(nsv))

    def as_dict(self):
        return {
            "breakpoints": [float(x) for x in self.breakpoints],
            "point_values": [float(x) for x in self.point_values],
            "seg_values": [float(x) for x in self.seg_values],
        }


def integrate_step(h: StepFunction) -> float:
    """Lebesgue integral; values at single points carry no mass."""
    return float(h.integral_exact())


def envelope(functions: Sequence[StepFunction], mode: str = "inf", J: int = 1) -> StepFunction:
    """Pointwise minimum of the list (``mode="inf"``) or of its tail from the
    J-th function on, 1-based (``mode="liminf_tail"``)."""
    if not functions:
        raise PreconditionError("envelope needs at least one function")
    if mode == "inf":
        chosen = list(functions)
    elif mode == "liminf_tail":
        if not 1 <= J <= len(functions):
            raise PreconditionError(f"tail index J={J} outside 1..{len(functions)}")
        chosen = list(functions[J - 1:])
    else:
        raise PreconditionError(f"unknown envelope mode {mode!r}")
    bp = sorted({x for h in chosen for x in h.breakpoints})
    pv = [min(h.value_exact(t) for h in chosen) for t in bp]
    sv = [min(h.value_exact((a + b) / 2) for h in chosen) for a, b in zip(bp, bp[1:])]
    return StepFunction(tuple(bp), tuple(pv), tuple(sv)).simplified()


# ---------------------------------------------------------------- slicing


def level_set(E: Sequence[int], f: MetricMap, t: float, tol: float = 0.0) -> tuple:
    v = f.values()
    return tuple(x for x in sorted(E) if abs(v[x] - t) <= tol)


def interval_hull(f: MetricMap, A: Sequence[int]) -> tuple:
    if len(A) == 0:
        raise PreconditionError("interval hull needs a nonempty set")
    v = f.values()
    vals = [float(v[x]) for x in A]
    return (min(vals), max(vals))


def subfamily_at(family: CoveringFamily, E, f: MetricMap, t: float, tol: float = 0.0) -> CoveringFamily:
    """Blocks meeting the level set E_t."""
    Et = set(level_set(E, f, t, tol))
    return CoveringFamily(tuple(b for b in family if Et.intersection(b)))


def _check_slice_alpha(alpha):
    if not alpha > 1:
        raise PreconditionError("slicing needs alpha > 1")


def slice_weight(diam: float, alpha: float, delta: float = 0.0) -> float:
    return max(diam, delta) ** (alpha - 1)


def slice_profile(space: FiniteMetricSpace, family: CoveringFamily, f: MetricMap, alpha: float,
                  delta: float = 0.0) -> StepFunction:
    """``h(t)`` for a family of point blocks; degenerate hulls count only at their point."""
    _check_slice_alpha(alpha)
    items = []
    for b in family:
        lo, hi = interval_hull(f, b)
        items.append((lo, hi, slice_weight(diameter(space, b), alpha, delta)))
    return StepFunction.from_indicators(items)


def slice_profile_intervals(pieces, alpha: float, delta: float = 0.0) -> StepFunction:
    """``h(t)`` for covering intervals of the line sliced by the identity."""
    _check_slice_alpha(alpha)
    return StepFunction.from_indicators((a, b, slice_weight(b - a, alpha, delta)) for a, b in pieces)


def exact_lipschitz(space: FiniteMetricSpace, f: MetricMap, E=None) -> Fraction:
    """Lipschitz constant of a real function as an exact ratio of floats."""
    v = f.values()
    pts = sorted(range(space.size) if E is None else set(E))
    best = ZERO
    fv = [Fraction(float(v[x])) for x in pts]
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            r = abs(fv[a] - fv[b]) / Fraction(space.d(pts[a], pts[b]))
            if r > best:
                best = r
    return best


@dataclass(frozen=True)
class SliceSample:
    t: float
    h_t: float
    slice_value: float
    ok: bool
    eps_slice_value: Optional[float] = None
    eps_ok: Optional[bool] = None
    level_size: int = 0
    method: str = "exact"

    def as_dict(self):
        out = {"t": self.t, "h_t": self.h_t, "slice_value": encode_float(self.slice_value),
               "ok": self.ok, "level_size": self.level_size, "method": self.method}
        if self.eps_slice_value is not None:
            out["eps_slice_value"] = encode_float(self.eps_slice_value)
            out["eps_ok"] = self.eps_ok
        return out


@dataclass(frozen=True)
class CoareaReport:
    C: float
    alpha: float
    sum_cost: float
    integral: float
    slack: float
    integral_ok: bool
    samples: tuple
    family_size: int
    eps: Optional[float] = None
    delta: float = 0.0

    @property
    def ok(self) -> bool:
        return self.integral_ok and all(s.ok and s.eps_ok is not False for s in self.samples)

    def as_dict(self):
        return {
            "C": self.C,
            "alpha": self.alpha,
            "eps": self.eps,
            "delta": self.delta,
            "sum_cost": self.sum_cost,
            "integral": self.integral,
            "slack": self.slack,
            "integral_ok": self.integral_ok,
            "ok": self.ok,
            "family_size": self.family_size,
            "samples": [s.as_dict() for s in self.samples],
        }


def _bound_ok(lhs: float, rhs: float, tol: float) -> bool:
    return lhs <= rhs + tol * max(1.0, abs(rhs))


def _integral_sides(weights, lengths, diams):
    """Exact ``(integral of h, sum of costs)``.

    Each cost is taken as ``w * diam`` rather than a separately rounded
    ``diam**alpha``, so ``w * |I(A)| <= C * w * diam`` survives rounding.
    """
    lhs = sum((Fraction(w) * Fraction(L) for w, L in zip(weights, lengths)), ZERO)
    cost = sum((Fraction(w) * Fraction(D) for w, D in zip(weights, diams)), ZERO)
    return lhs, cost


def coarea_report(space: FiniteMetricSpace, E, f: MetricMap, family: CoveringFamily, alpha: float,
                  t_samples=(), eps: Optional[float] = None, delta: float = 0.0,
                  level_tol: float = 0.0, tol: float = 1e-9, cap: Optional[int] = None) -> CoareaReport:
    """Integral bound and pointwise slice bounds for a family covering E.

    The integral side is checked in exact rational arithmetic with C the exact
    Lipschitz ratio of f on the family's points.  Slice values are exact
    covers of E_t at exponent alpha - 1 (greedy upper bounds past the
    partition cap, recorded in ``method``), compared against h(t) with
    relative tolerance ``tol``.  With ``delta > 0`` both h and the slice
    values use the floor ``max(diam, delta)``.
    """
    _check_slice_alpha(alpha)
    E = tuple(sorted(set(E)))
    if not family.covers(E):
        raise PreconditionError("family does not cover E")
    diams = family.diameters(space)
    if eps is not None and not all(d < eps for d in diams):
        raise PreconditionError("eps slice bound needs an eps-family (every diameter < eps)")
    pts = sorted({x for b in family for x in b})
    C = exact_lipschitz(space, f, pts)
    h = slice_profile(space, family, f, alpha, delta)
    weights = [slice_weight(D, alpha, delta) for D in diams]
    hulls = [interval_hull(f, b) for b in family]
    lengths = [Fraction(hi) - Fraction(lo) for lo, hi in hulls]
    floored = [max(D, delta) for D in diams]
    lhs, cost = _integral_sides(weights, lengths, floored)
    rhs = C * cost
    cap = partition_cap() if cap is None else cap
    samples = []
    for t in sorted(float(t) for t in t_samples):
        Et = level_set(E, f, t, level_tol)
        method = "exact" if len(Et) <= cap else "greedy"
        h_t = h(t)
        sv = cover_value(space, Et, alpha - 1, delta, None, method, cap).value
        ev = eok = None
        if eps is not None:
            ev = cover_value(space, Et, alpha - 1, delta, eps, method, cap).value
            eok = _bound_ok(ev, h_t, tol)
        samples.append(SliceSample(t, h_t, sv, _bound_ok(sv, h_t, tol), ev, eok, len(Et), method))
    return CoareaReport(float(C), alpha, float(cost), float(lhs), float(rhs - lhs), lhs <= rhs,
                        tuple(samples), len(family), eps, delta)


def coarea_report_intervals(U: IntervalUnion, pieces, alpha: float, t_samples=(),
                            eps: Optional[float] = None, delta: float = 0.0,
                            tol: float = 1e-9) -> CoareaReport:
    """Same report for a union on the line, f the identity (C = 1).

    ``pieces`` are closed intervals covering U.  A level set is the single
    point t when t lies in U, so its value is ``delta**(alpha - 1)``, or 0.
    """
    _check_slice_alpha(alpha)
    pieces = [(float(a), float(b)) for a, b in pieces]
    for a, b in U:
        if not _covered(a, b, pieces):
            raise PreconditionError(f"pieces do not cover component [{a}, {b}]")
    diams = [b - a for a, b in pieces]
    if eps is not None and not all(d < eps for d in diams):
        raise PreconditionError("eps slice bound needs an eps-family (every diameter < eps)")
    h = slice_profile_intervals(pieces, alpha, delta)
    weights = [slice_weight(D, alpha, delta) for D in diams]
    lengths = [Fraction(b) - Fraction(a) for a, b in pieces]
    floored = [max(L, Fraction(delta)) for L in lengths]
    lhs, cost = _integral_sides(weights, lengths, floored)
    samples = []
    for t in sorted(float(t) for t in t_samples):
        inside = U.contains(t)
        point = IntervalUnion(((t, t),)) if inside else IntervalUnion()
        if delta > 0 and inside:
            # one point under the floor; it is an eps-family on its own
            sv = ev = delta ** (alpha - 1)
        else:
            sv = interval_content(point, alpha - 1).value
            ev = interval_eps(point, alpha - 1, eps).value if eps is not None else None
        h_t = h(t)
        eok = None if ev is None else _bound_ok(ev, h_t, tol)
        samples.append(SliceSample(t, h_t, sv, _bound_ok(sv, h_t, tol), ev, eok, int(inside), "interval"))
    return CoareaReport(1.0, alpha, float(cost), float(lhs), float(cost - lhs), lhs <= cost,
                        tuple(samples), len(pieces), eps, delta)


def _covered(a, b, pieces) -> bool:
    reach = None
    for lo, hi in sorted(pieces):
        if hi < a:
            continue
        if reach is None:
            if lo > a:
                return False
            reach = hi
        elif lo <= reach:
            reach = max(reach, hi)
        else:
            break
        if reach >= b:
            return True
    return False
