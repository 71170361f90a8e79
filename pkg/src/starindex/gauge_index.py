"""Minkowski gauges about a star center and the convexity index.

The index at ``p`` is the largest ``r`` with ``p + r (co(S) - p)`` inside
``S``; along each ray this is the ratio of the star radius to the hull
radius, so the index is the infimum of that ratio over directions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CenterNotInteriorKernel, DegenerateKernel, NotStarShaped
from .geometry import (
    TOL_GEOM,
    TWO_PI,
    Point2,
    RadialProfile,
    SimplePolygon,
    StarPolygon,
    as_point,
    convex_hull,
    edge_margin,
    radial_profile,
)
from .star_kernel import kernel

TOL_INDEX = 1e-9
TOL_GLOBAL = 1e-6


class Which(str, enum.Enum):
    STAR = "star"
    HULL = "hull"


@dataclass(frozen=True)
class GaugeEvaluator:
    star: StarPolygon
    hull: SimplePolygon
    hull_profile: RadialProfile

    @classmethod
    def build(cls, poly: SimplePolygon, p: Point2) -> "GaugeEvaluator":
        star = StarPolygon(poly, p)
        hull = convex_hull(poly)
        return cls(star, hull, radial_profile(hull, star.center))

    @property
    def center(self) -> Point2:
        return self.star.center

    @property
    def star_profile(self) -> RadialProfile:
        return self.star.profile

    def profile(self, which: Which) -> RadialProfile:
        return self.star_profile if Which(which) is Which.STAR else self.hull_profile


def gauge(ev: GaugeEvaluator, x: Point2, which: Which = Which.STAR) -> float:
    """``inf{r > 0 : x - p in r (K - p)}`` for K the star set or its hull."""
    px, py = ev.center
    dx, dy = x[0] - px, x[1] - py
    d = math.hypot(dx, dy)
    if d == 0.0:
        return 0.0
    return d / ev.profile(which).radius(math.atan2(dy, dx))


@dataclass(frozen=True)
class IndexReport:
    """Convexity index at ``p`` with bounds and the direction attaining it.

    ``kind`` is ``"at_p"`` for a single center.  For ``"global"`` reports
    ``p`` is the best center found by the kernel search, the bounds bracket
    the index at that center, and the whole report is a lower bound on the
    supremum over all centers.
    """

    alpha_p: float
    lower_bound: float
    upper_bound: float
    witness_angle: float
    p: Point2
    kind: str = "at_p"
    evaluations: int = 1

    def to_record(self) -> dict:
        return {
            "kind": "index",
            "scope": self.kind,
            "alpha": self.alpha_p,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "witness_angle": self.witness_angle,
            "p": list(self.p),
            "evaluations": self.evaluations,
        }


def _interval_min(prof_s: RadialProfile, prof_c: RadialProfile, t0: float, t1: float, tm: float):
    """Minimum of r_S / r_C over [t0, t1] where both are single ray-line forms.

    With r = c / cos(theta - phi) for each profile, the ratio is
    k * cos(theta - phi_C) / cos(theta - phi_S), whose derivative is
    k * sin(phi_C - phi_S) / cos^2(theta - phi_S): constant sign, so the
    extremes sit at the interval ends.
    """
    i, j = prof_s.interval(tm), prof_c.interval(tm)
    cs, ps = prof_s.offsets[i], prof_s.phis[i]
    cc, pc = prof_c.offsets[j], prof_c.phis[j]
    k = cs / cc
    r0 = k * math.cos(t0 - pc) / math.cos(t0 - ps)
    r1 = k * math.cos(t1 - pc) / math.cos(t1 - ps)
    return (r0, t0) if r0 <= r1 else (r1, t1)


def _index_from_profiles(prof_s: RadialProfile, prof_c: RadialProfile):
    thetas = sorted(set(prof_s.breakpoints) | set(prof_c.breakpoints))
    m = len(thetas)
    vals = []
    for k in range(m):
        t0 = thetas[k]
        t1 = thetas[k + 1] if k + 1 < m else thetas[0] + TWO_PI
        vals.append(_interval_min(prof_s, prof_c, t0, t1, 0.5 * (t0 + t1)))
    best = min(v for v, _ in vals)
    # among (near-)ties prefer the smallest angle so symmetric shapes give a stable witness
    ties = [t % TWO_PI for v, t in vals if v <= best + 1e-12]
    return best, min(ties)


def convexity_index_at(S: SimplePolygon, p: Point2, tol: float = TOL_INDEX) -> IndexReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    ev = GaugeEvaluator.build(S, p)
    value, witness = _index_from_profiles(ev.star_profile, ev.hull_profile)
    err = 64 * float(np.finfo(float).eps) * max(1.0, value)
    alpha = min(1.0, max(0.0, value))
    return IndexReport(
        alpha_p=alpha,
        lower_bound=max(0.0, alpha - err),
        upper_bound=min(1.0, alpha + err),
        witness_angle=witness,
        p=ev.center,
    )


def _alpha_or_none(S: SimplePolygon, hull: SimplePolygon, p: Point2, margin: float) -> Optional[float]:
    if edge_margin(S, p) < margin:
        return None
    try:
        value, _ = _index_from_profiles(radial_profile(S, p), radial_profile(hull, p))
    except CenterNotInteriorKernel:
        return None
    return min(1.0, value)


def convexity_index_global(S: SimplePolygon, tol: float = TOL_GLOBAL, grid: int = 15,
                           starts: int = 3) -> IndexReport:
    """Search the kernel for the center with the largest index.

    A coarse grid over the kernel (at least ``grid**2`` admissible centers)
    seeds a compass pattern search whose step halves down to ``tol``.
    """
    K = kernel(S)
    if not K.is_star_shaped:
        raise NotStarShaped("polygon has an empty kernel")
    if K.degenerate:
        raise DegenerateKernel("kernel has no interior; no admissible center")
    kpoly = K.polygon
    hull = convex_hull(S)
    margin = 2 * TOL_GEOM
    x0, y0, x1, y1 = kpoly.bbox
    evals = 0
    scored: list = []
    n = grid
    while True:
        xs = np.linspace(x0, x1, n + 2)[1:-1]
        ys = np.linspace(y0, y1, n + 2)[1:-1]
        cands = [(float(x), float(y)) for x in xs for y in ys]
        admissible = [q for q in cands if edge_margin(S, q) >= margin]
        if len(admissible) >= grid * grid or n >= 8 * grid:
            break
        n *= 2
    for q in admissible:
        a = _alpha_or_none(S, hull, q, margin)
        evals += 1
        if a is not None:
            scored.append((a, q))
    if not scored:
        c = K.interior_point()
        a = _alpha_or_none(S, hull, c, margin)
        if a is None:
            raise DegenerateKernel("no admissible center found in the kernel")
        scored.append((a, c))
    scored.sort(key=lambda t: (-t[0], t[1]))
    step0 = max((x1 - x0), (y1 - y0)) / (n + 1)
    dirs = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
    best_a, best_p = scored[0]
    for a, q in scored[:starts]:
        step = step0
        while step >= tol:
            moved = False
            for dx, dy in dirs:
                cand = (q[0] + step * dx, q[1] + step * dy)
                ca = _alpha_or_none(S, hull, cand, margin)
                evals += 1
                if ca is not None and ca > a:
                    a, q, moved = ca, cand, True
                    break
            if not moved:
                step *= 0.5
        if a > best_a:
            best_a, best_p = a, q
    rep = convexity_index_at(S, best_p)
    return IndexReport(
        alpha_p=rep.alpha_p,
        lower_bound=rep.lower_bound,
        upper_bound=rep.upper_bound,
        witness_angle=rep.witness_angle,
        p=rep.p,
        kind="global",
        evaluations=evals,
    )


def resolve_center(S: SimplePolygon, p: Optional[Point2] = None) -> Point2:
    """The given center, or the centroid of the kernel when none is given."""
    if p is not None:
        return as_point(p)
    K = kernel(S)
    return K.interior_point()
