"""Planar primitives: simple polygons, containment, hulls and radial functions.

Points are plain ``(x, y)`` float tuples.  Polygons are normalized on
construction (counterclockwise, no repeated or collinear vertices) so the
kernel, hull and radial routines can assume a clean boundary.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import (
    CenterNotInteriorKernel,
    DegenerateArea,
    GeometryError,
    SelfIntersecting,
    TooFewVertices,
)

TOL_GEOM = 1e-9
TWO_PI = 2.0 * math.pi

Point2 = Tuple[float, float]


class Containment(enum.IntEnum):
    OUTSIDE = -1
    ON_BOUNDARY = 0
    INSIDE = 1


def cross(o: Point2, a: Point2, b: Point2) -> float:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def as_point(q: Iterable[float]) -> Point2:
    x, y = (float(c) for c in q)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate in point {(x, y)!r}")
    return (x, y)


def _signed_area(pts: Sequence[Point2]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon.

    Build instances with :func:`validate_simple`; the constructor itself
    trusts its input.
    """

    vertices: Tuple[Point2, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.vertices, dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @cached_property
    def centroid(self) -> Point2:
        a = self.area
        cx = cy = 0.0
        n = len(self.vertices)
        for i in range(n):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % n]
            w = x0 * y1 - x1 * y0
            cx += (x0 + x1) * w
            cy += (y0 + y1) * w
        return (cx / (6.0 * a), cy / (6.0 * a))

    @cached_property
    def bbox(self) -> Tuple[float, float, float, float]:
        arr = self.array
        return (arr[:, 0].min(), arr[:, 1].min(), arr[:, 0].max(), arr[:, 1].max())

    @property
    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    @cached_property
    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        a = self.array
        return a, np.roll(a, -1, axis=0)

    def is_convex(self, tol: float = TOL_GEOM) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a, b, c = self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]
            ab = math.dist(a, b)
            if cross(a, b, c) < -tol * ab:
                return False
        return True

    def scaled_about(self, p: Point2, s: float) -> "SimplePolygon":
        """The polygon ``p + s (P - p)`` for ``s > 0``."""
        if s <= 0:
            raise GeometryError("scale factor must be positive")
        px, py = p
        return SimplePolygon(tuple((px + s * (x - px), py + s * (y - py)) for x, y in self.vertices))

    def to_record(self) -> dict:
        return {"kind": "polygon", "vertices": [[x, y] for x, y in self.vertices]}


def _dedupe(pts: list, tol: float) -> list:
    out: list = []
    for q in pts:
        if not out or math.dist(out[-1], q) > tol:
            out.append(q)
    while len(out) > 1 and math.dist(out[0], out[-1]) <= tol:
        out.pop()
    return out


def _drop_collinear(pts: list, tol: float) -> list:
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            ac = math.dist(a, c)
            if ac <= tol or abs(cross(a, c, b)) <= tol * ac:
                del pts[i]
                pts = _dedupe(pts, tol)
                changed = True
                break
    return pts


def segment_distances(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each of ``m`` points to each of ``n`` segments, shape (m, n)."""
    points = np.atleast_2d(points)
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    dd = np.where(dd > 0, dd, 1.0)
    w = points[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("mnk,nk->mn", w, d) / dd, 0.0, 1.0)
    foot = a[None, :, :] + t[:, :, None] * d[None, :, :]
    return np.hypot(points[:, None, 0] - foot[:, :, 0], points[:, None, 1] - foot[:, :, 1])


def _find_self_intersection(pts: list, tol: float):
    arr = np.array(pts, dtype=float)
    a, b = arr, np.roll(arr, -1, axis=0)
    n = len(arr)
    for i in range(n - 2):
        js = np.arange(i + 2, n)
        if i == 0:
            js = js[js != n - 1]
        if js.size == 0:
            continue
        p0, p1 = a[i], b[i]
        q0, q1 = a[js], b[js]

        def orient(o, u, v):
            return (u[..., 0] - o[..., 0]) * (v[..., 1] - o[..., 1]) - (u[..., 1] - o[..., 1]) * (v[..., 0] - o[..., 0])

        d1 = orient(q0, q1, p0)
        d2 = orient(q0, q1, p1)
        d3 = orient(p0, p1, q0)
        d4 = orient(p0, p1, q1)
        proper = (d1 * d2 < 0) & (d3 * d4 < 0)
        touch = (
            (segment_distances(p0[None], q0, q1)[0] <= tol)
            | (segment_distances(p1[None], q0, q1)[0] <= tol)
            | (segment_distances(q0, p0[None], p1[None])[:, 0] <= tol)
            | (segment_distances(q1, p0[None], p1[None])[:, 0] <= tol)
        )
        hit = proper | touch
        if hit.any():
            return i, int(js[np.argmax(hit)])
    return None


def validate_simple(vertices: Iterable[Iterable[float]], tol: float = TOL_GEOM) -> SimplePolygon:
    """Normalize a vertex list into a counterclockwise simple polygon.

    Raises TooFewVertices, SelfIntersecting or DegenerateArea.
    """
    pts = [as_point(v) for v in vertices]
    if len(pts) < 3:
        raise TooFewVertices(f"polygon needs at least 3 vertices, got {len(pts)}")
    pts = _drop_collinear(_dedupe(pts, tol), tol)
    if len(pts) < 3:
        raise DegenerateArea("polygon collapses to fewer than 3 vertices")
    hit = _find_self_intersection(pts, tol)
    if hit is not None:
        raise SelfIntersecting(f"edges {hit[0]} and {hit[1]} intersect")
    area = _signed_area(pts)
    if abs(area) <= tol * tol:
        raise DegenerateArea(f"polygon area {area!r} is degenerate")
    if area < 0:
        pts.reverse()
    return SimplePolygon(tuple(pts))


def contains_many(poly: SimplePolygon, points, tol: float = TOL_GEOM) -> np.ndarray:
    """Vectorized :func:`contains`; returns an int array of Containment values."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    a, b = poly.edge_arrays
    px = pts[:, 0:1]
    py = pts[:, 1:2]
    ay, by = a[None, :, 1], b[None, :, 1]
    straddle = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = a[None, :, 0] + (py - ay) * (b[None, :, 0] - a[None, :, 0]) / (by - ay)
    crossings = np.count_nonzero(straddle & (px < xint), axis=1)
    out = np.where(crossings % 2 == 1, Containment.INSIDE, Containment.OUTSIDE).astype(int)
    if tol > 0:
        near = segment_distances(pts, a, b).min(axis=1) <= tol
        out[near] = Containment.ON_BOUNDARY
    return out


def contains(poly: SimplePolygon, q: Point2, tol: float = TOL_GEOM) -> Containment:
    return Containment(int(contains_many(poly, [q], tol)[0]))


def hull_of_points(points: Iterable[Point2], tol: float = TOL_GEOM) -> SimplePolygon:
    """Monotone-chain convex hull of a point set."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) < 3:
        raise DegenerateArea("hull needs at least 3 distinct points")

    def half(seq):
        chain: list = []
        for q in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], q) <= 0.0:
                chain.pop()
            chain.append(q)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return validate_simple(lower[:-1] + upper[:-1], tol)


def convex_hull(poly: SimplePolygon) -> SimplePolygon:
    return hull_of_points(poly.vertices)


def edge_margin(poly: SimplePolygon, p: Point2) -> float:
    """Smallest signed distance from ``p`` to the inner side of any edge line.

    Positive exactly when ``p`` is strictly inside every edge half-plane,
    i.e. strictly inside the star kernel.
    """
    a, b = poly.edge_arrays
    d = b - a
    lens = np.hypot(d[:, 0], d[:, 1])
    s = (d[:, 0] * (p[1] - a[:, 1]) - d[:, 1] * (p[0] - a[:, 0])) / lens
    return float(s.min())


@dataclass(frozen=True)
class RadialProfile:
    """Distance from ``center`` to the boundary as a function of direction.

    Interval ``i`` starts at ``breakpoints[i]`` and is served by the edge
    line ``a x + b y = c`` in ``lines[i]`` (``(a, b)`` the unit outward
    normal), so ``r(theta) = offset_i / cos(theta - phi_i)``.
    """

    center: Point2
    breakpoints: Tuple[float, ...]
    lines: Tuple[Tuple[float, float, float], ...]
    offsets: Tuple[float, ...]
    phis: Tuple[float, ...]
    corner_radii: Tuple[float, ...]

    def interval(self, theta: float) -> int:
        t = theta % TWO_PI
        return (bisect.bisect_right(self.breakpoints, t) - 1) % len(self.breakpoints)

    def radius(self, theta: float) -> float:
        i = self.interval(theta)
        return self.offsets[i] / math.cos(theta - self.phis[i])

    def radii(self, thetas) -> np.ndarray:
        t = np.mod(np.asarray(thetas, dtype=float), TWO_PI)
        idx = (np.searchsorted(np.asarray(self.breakpoints), t, side="right") - 1) % len(self.breakpoints)
        offs = np.asarray(self.offsets)[idx]
        phis = np.asarray(self.phis)[idx]
        return offs / np.cos(t - phis)

    def boundary_point(self, theta: float) -> Point2:
        r = self.radius(theta)
        return (self.center[0] + r * math.cos(theta), self.center[1] + r * math.sin(theta))

    def boundary_points(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=float)
        r = self.radii(t)
        return np.column_stack([self.center[0] + r * np.cos(t), self.center[1] + r * np.sin(t)])


def radial_profile(poly: SimplePolygon, p: Point2, tol: float = TOL_GEOM) -> RadialProfile:
    p = as_point(p)
    margin = edge_margin(poly, p)
    if margin < tol:
        raise CenterNotInteriorKernel(f"center {p} has kernel margin {margin:.3e} < {tol:.1e}")
    px, py = p
    angles = [math.atan2(y - py, x - px) % TWO_PI for x, y in poly.vertices]
    n = len(angles)
    start = min(range(n), key=angles.__getitem__)
    order = [(start + k) % n for k in range(n)]
    breaks, lines, offsets, phis, corners = [], [], [], [], []
    for i in order:
        (x0, y0), (x1, y1) = poly.vertices[i], poly.vertices[(i + 1) % n]
        dx, dy = x1 - x0, y1 - y0
        ln = math.hypot(dx, dy)
        a, b = dy / ln, -dx / ln
        c = a * x0 + b * y0
        breaks.append(angles[i])
        lines.append((a, b, c))
        offsets.append(c - (a * px + b * py))
        phis.append(math.atan2(b, a))
        corners.append(math.hypot(x0 - px, y0 - py))
    if any(b1 <= b0 for b0, b1 in zip(breaks, breaks[1:])):
        raise CenterNotInteriorKernel("vertex directions are not strictly increasing about the center")
    return RadialProfile(p, tuple(breaks), tuple(lines), tuple(offsets), tuple(phis), tuple(corners))


@dataclass(frozen=True)
class StarPolygon:
    """A simple polygon together with a star center strictly inside its kernel."""

    polygon: SimplePolygon
    center: Point2
    profile: RadialProfile = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "profile", radial_profile(self.polygon, self.center))

    @classmethod
    def from_vertices(cls, vertices, center) -> "StarPolygon":
        return cls(validate_simple(vertices), center)

    def gauge(self, x: Point2) -> float:
        """Minkowski gauge of ``S - p`` evaluated at ``x - p``."""
        dx, dy = x[0] - self.center[0], x[1] - self.center[1]
        d = math.hypot(dx, dy)
        if d == 0.0:
            return 0.0
        return d / self.profile.radius(math.atan2(dy, dx))

    def gauges(self, xs) -> np.ndarray:
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        dx = xs[:, 0] - self.center[0]
        dy = xs[:, 1] - self.center[1]
        d = np.hypot(dx, dy)
        r = self.profile.radii(np.arctan2(dy, dx))
        return np.where(d == 0.0, 0.0, d / r)


def union_about_center(a: StarPolygon, b: StarPolygon, tol: float = TOL_GEOM) -> SimplePolygon:
    """Union of two polygons that are star-shaped about the same interior center.

    The union is star-shaped about that center with radial function
    ``max(r_a, r_b)``, so its boundary is traced interval by interval over
    the merged breakpoints, inserting the line-line crossing wherever the
    larger radius switches sides.
    """
    if math.dist(a.center, b.center) > tol:
        raise GeometryError("union_about_center needs a common center")
    pa, pb = a.profile, b.profile
    px, py = a.center
    thetas = sorted(set(pa.breakpoints) | set(pb.breakpoints))
    ra_all = [pa.radius(t) for t in thetas]
    rb_all = [pb.radius(t) for t in thetas]
    # r_b / r_a is monotone between merged breakpoints, so checking them decides containment
    if all(rb <= ra for ra, rb in zip(ra_all, rb_all)):
        return a.polygon
    if all(ra <= rb for ra, rb in zip(ra_all, rb_all)):
        return b.polygon
    corners = {}
    for prof, poly in ((pb, b.polygon), (pa, a.polygon)):
        for x, y in poly.vertices:
            corners[(id(prof), math.atan2(y - py, x - px) % TWO_PI)] = (x, y)
    pts: list = []
    m = len(thetas)
    for k in range(m):
        t0 = thetas[k]
        t1 = thetas[(k + 1) % m] + (TWO_PI if k == m - 1 else 0.0)
        ra, rb = ra_all[k], rb_all[k]
        prof = pa if ra >= rb else pb
        exact = corners.get((id(prof), t0))
        if exact is not None:
            pts.append(exact)
        else:
            r = max(ra, rb)
            pts.append((px + r * math.cos(t0), py + r * math.sin(t0)))
        tm = 0.5 * (t0 + t1)
        ia, ib = pa.interval(tm), pb.interval(tm)
        a1, b1, c1 = pa.lines[ia]
        a2, b2, c2 = pb.lines[ib]
        det = a1 * b2 - a2 * b1
        if abs(det) < 1e-15:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        tx = math.atan2(y - py, x - px) % TWO_PI
        if tx < t0:
            tx += TWO_PI
        if t0 < tx < t1 and (x - px) * math.cos(tx) + (y - py) * math.sin(tx) > 0:
            pts.append((x, y))
    return validate_simple(pts, tol)
