"""Stock shapes and random generators used by tests, demos and the CLI."""

from __future__ import annotations

import math

import numpy as np

from .geometry import SimplePolygon, hull_of_points, validate_simple


def square(side: float = 1.0, origin=(0.0, 0.0)) -> SimplePolygon:
    x, y = origin
    return validate_simple([(x, y), (x + side, y), (x + side, y + side), (x, y + side)])


def cross() -> SimplePolygon:
    """Union of [-3,3]x[-1,1] and [-1,1]x[-3,3]."""
    return validate_simple([
        (3, -1), (3, 1), (1, 1), (1, 3), (-1, 3), (-1, 1),
        (-3, 1), (-3, -1), (-1, -1), (-1, -3), (1, -3), (1, -1),
    ])


def zigzag() -> SimplePolygon:
    return validate_simple([(0, 0), (4, 0), (4, 3), (1, 3), (1, 2), (3, 2), (3, 1), (0, 1)])


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> SimplePolygon:
    return validate_simple([
        (radius * math.cos(phase + 2 * math.pi * k / n), radius * math.sin(phase + 2 * math.pi * k / n))
        for k in range(n)
    ])


def regular_star(points: int = 5, outer: float = 1.0) -> SimplePolygon:
    """Outline of the regular star polygon {points/2}, first tip on the +y axis."""
    inner = outer * math.cos(2 * math.pi / points) / math.cos(math.pi / points)
    verts = []
    for k in range(2 * points):
        r = outer if k % 2 == 0 else inner
        t = math.pi / 2 + math.pi * k / points
        verts.append((r * math.cos(t), r * math.sin(t)))
    return validate_simple(verts)


def spiked_cross(spike_length: float = 6.0, half_width: float = 0.05) -> SimplePolygon:
    """CROSS with a thin spike leaving the right arm along the x axis."""
    w = half_width
    return validate_simple([
        (3, -1), (3, -w), (3 + spike_length, -w), (3 + spike_length, w), (3, w), (3, 1),
        (1, 1), (1, 3), (-1, 3), (-1, 1), (-3, 1), (-3, -1), (-1, -1), (-1, -3), (1, -3), (1, -1),
    ])


def random_star_polygon(rng: np.random.Generator, n: int | None = None, center=(0.0, 0.0),
                        rmin: float = 0.25, rmax: float = 1.0) -> SimplePolygon:
    """Random polygon that is star-shaped about ``center`` with margin.

    Vertex directions are jittered around an even spread, so consecutive
    gaps stay well below pi and ``center`` is strictly inside the kernel.
    """
    if n is None:
        n = int(rng.integers(5, 16))
    base = 2 * math.pi * np.arange(n) / n
    jitter = rng.uniform(-0.3, 0.3, size=n) * (2 * math.pi / n)
    angles = base + jitter + rng.uniform(0, 2 * math.pi)
    radii = rng.uniform(rmin, rmax, size=n)
    cx, cy = center
    return validate_simple([(cx + r * math.cos(t), cy + r * math.sin(t)) for r, t in zip(radii, angles)])


def random_nonconvex_star_polygon(rng: np.random.Generator, **kw) -> SimplePolygon:
    while True:
        poly = random_star_polygon(rng, **kw)
        if not poly.is_convex(1e-6):
            return poly


def random_convex_polygon(rng: np.random.Generator, n: int | None = None, scale: float = 1.0) -> SimplePolygon:
    if n is None:
        n = int(rng.integers(3, 13))
    while True:
        pts = rng.normal(size=(max(n, 3) * 3, 2)) * scale
        poly = hull_of_points(map(tuple, pts))
        if len(poly) >= 3 and poly.area > 0.05 * scale * scale:
            return poly
