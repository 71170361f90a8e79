"""Star kernel of a simple polygon: the set of all admissible star centers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import DegenerateKernel, NotStarShaped
from .geometry import (
    TOL_GEOM,
    Point2,
    SimplePolygon,
    _signed_area,
    convex_hull,
    edge_margin,
    validate_simple,
)


@dataclass(frozen=True)
class KernelResult:
    vertices: Tuple[Point2, ...]
    is_star_shaped: bool
    degenerate: bool

    @property
    def polygon(self) -> Optional[SimplePolygon]:
        if not self.is_star_shaped or self.degenerate:
            return None
        return SimplePolygon(self.vertices)

    @property
    def area(self) -> float:
        return _signed_area(self.vertices) if len(self.vertices) >= 3 else 0.0

    def interior_point(self) -> Point2:
        """A point well inside the kernel (its area centroid)."""
        poly = self.polygon
        if poly is None:
            if not self.is_star_shaped:
                raise NotStarShaped("polygon has an empty kernel")
            raise DegenerateKernel("kernel has no interior")
        return poly.centroid

    def to_record(self) -> dict:
        return {
            "kind": "kernel",
            "is_star_shaped": self.is_star_shaped,
            "degenerate": self.degenerate,
            "vertices": [[x, y] for x, y in self.vertices],
        }


def _clip(poly: list, a: Point2, b: Point2, tol: float) -> list:
    """Keep the part of a convex polygon left of the directed line a->b."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    ln = math.hypot(dx, dy)

    def side(q):
        return (dx * (q[1] - a[1]) - dy * (q[0] - a[0])) / ln

    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        sc, sn = side(cur), side(nxt)
        if sc >= -tol:
            out.append(cur)
        if (sc > tol and sn < -tol) or (sc < -tol and sn > tol):
            t = sc / (sc - sn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def _dedupe_ring(pts: list, tol: float) -> list:
    out: list = []
    for q in pts:
        if not out or math.dist(out[-1], q) > tol:
            out.append(q)
    while len(out) > 1 and math.dist(out[0], out[-1]) <= tol:
        out.pop()
    return out


def kernel(poly: SimplePolygon, tol: float = TOL_GEOM) -> KernelResult:
    """Intersect the inner half-planes of every edge, starting from the hull."""
    region = list(convex_hull(poly).vertices)
    for a, b in poly.edges:
        region = _dedupe_ring(_clip(region, a, b, tol), tol)
        if not region:
            return KernelResult((), False, False)
    if len(region) >= 3 and abs(_signed_area(region)) > tol * tol:
        try:
            clean = validate_simple(region, tol)
        except ValueError:
            return KernelResult(tuple(region), True, True)
        return KernelResult(clean.vertices, True, False)
    return KernelResult(tuple(region), True, True)


def is_star_center(poly: SimplePolygon, p: Point2, tol: float = TOL_GEOM) -> bool:
    """True iff every segment from ``p`` to a point of the polygon stays inside it."""
    return edge_margin(poly, p) >= -tol
