import math

import numpy as np
import pytest

from oracles import boundary_samples, visible_all
from starindex import shapes
from starindex.errors import DegenerateKernel, NotStarShaped
from starindex.geometry import Containment, SimplePolygon, contains_many, validate_simple
from starindex.star_kernel import is_star_center, kernel


def _boundary_distance(poly: SimplePolygon, pts):
    from starindex.geometry import segment_distances

    a, b = poly.edge_arrays
    return segment_distances(np.asarray(pts, dtype=float), a, b).min(axis=1)


def test_convex_kernel_is_itself(unit_square):
    K = kernel(unit_square)
    assert K.is_star_shaped and not K.degenerate
    assert K.area == pytest.approx(1.0)
    assert set(K.vertices) == set(unit_square.vertices)


def test_cross_kernel_is_central_square(cross):
    K = kernel(cross)
    assert K.is_star_shaped
    assert set(K.vertices) == {(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)}
    assert K.interior_point() == pytest.approx((0.0, 0.0), abs=1e-15)


def test_zigzag_has_empty_kernel():
    K = kernel(shapes.zigzag())
    assert not K.is_star_shaped
    with pytest.raises(NotStarShaped):
        K.interior_point()


def test_regular_star_kernel_is_inner_pentagon():
    P = shapes.regular_star(5)
    K = kernel(P)
    inner = math.cos(2 * math.pi / 5) / math.cos(math.pi / 5)
    assert len(K.vertices) == 5
    np.testing.assert_allclose(np.hypot(*np.array(K.vertices).T), inner, rtol=1e-12)


def test_degenerate_kernel_segment():
    # Z shape: one notch edge forces y >= 0, the other y <= 0
    Z = validate_simple([(-2, -1), (1, -1), (1, 0), (2, 0), (2, 1), (-1, 1), (-1, 0), (-2, 0)])
    K = kernel(Z)
    assert K.is_star_shaped and K.degenerate
    assert all(abs(y) < 1e-12 for _, y in K.vertices)
    with pytest.raises(DegenerateKernel):
        K.interior_point()


@pytest.mark.parametrize("p,expected", [
    ((0.0, 0.0), True),
    ((1.0, 1.0), True),
    ((2.0, 0.0), False),
    ((1.0 + 1e-6, 0.0), False),
])
def test_is_star_center_cross(cross, p, expected):
    assert is_star_center(cross, p) is expected


def _swirl(rng):
    """A polygon that is usually not star-shaped: a random star with a twisted radial profile."""
    n = int(rng.integers(10, 20))
    t = np.sort(rng.uniform(0, 2 * math.pi, n))
    r = rng.uniform(0.3, 1.0, n)
    t = t + 1.5 * r  # twisting by radius breaks radial visibility
    pts = [(float(ri * math.cos(ti)), float(ri * math.sin(ti))) for ri, ti in zip(r, t)]
    try:
        return validate_simple(pts)
    except ValueError:
        return None


@pytest.mark.parametrize("family", ["star", "swirl"])
def test_kernel_matches_visibility_oracle(family, rng):
    checked = 0
    trials = 0
    while checked < 50 and trials < 2000:
        trials += 1
        P = shapes.random_nonconvex_star_polygon(rng) if family == "star" else _swirl(rng)
        if P is None:
            continue
        K = kernel(P)
        x0, y0, x1, y1 = P.bbox
        gx, gy = np.meshgrid(np.linspace(x0, x1, 50), np.linspace(y0, y1, 50))
        q = np.column_stack([gx.ravel(), gy.ravel()])
        q = q[contains_many(P, q) == Containment.INSIDE]
        samples = boundary_samples(P.vertices, 512)
        oracle = visible_all(P.vertices, q, samples)
        if K.is_star_shaped and not K.degenerate:
            in_k = contains_many(K.polygon, q, tol=0.0) >= Containment.ON_BOUNDARY
            far = _boundary_distance(K.polygon, q) > 1e-3
        else:
            in_k = np.zeros(len(q), dtype=bool)
            far = np.ones(len(q), dtype=bool)
        # points farther than 1e-3 from the kernel boundary are classified identically
        assert np.array_equal(in_k[far], oracle[far])
        checked += 1
    assert checked >= 50


def test_kernel_is_convex_and_admissible(rng):
    for _ in range(40):
        P = shapes.random_nonconvex_star_polygon(rng)
        K = kernel(P)
        assert K.is_star_shaped
        kp = K.polygon
        assert kp.is_convex()
        v = np.array(kp.vertices)
        i, j = rng.integers(0, len(v), size=(2, 30))
        mids = 0.5 * (v[i] + v[j])
        assert all(is_star_center(P, tuple(m)) for m in mids)
        assert all(is_star_center(P, tuple(x)) for x in v)


def test_kernel_record_shape(cross):
    rec = kernel(cross).to_record()
    assert rec["kind"] == "kernel" and rec["is_star_shaped"] is True
    assert len(rec["vertices"]) == 4
