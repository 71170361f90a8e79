import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import boundary_samples
from starindex import shapes
from starindex.errors import EmptyEpsList, InputError, InvalidEpsilon, NotStarCenter, NotStarShaped
from starindex.gauge_index import convexity_index_at
from starindex.geometry import Containment, contains_many, validate_simple
from starindex.metric import (
    Directional,
    Euclidean,
    SeminormFamily,
    densify,
    pseudo_distance,
)
from starindex.star_kernel import is_star_center

E = Euclidean()


def _translate(P, v):
    return validate_simple([(x + v[0], y + v[1]) for x, y in P.vertices])


def _sampled_hausdorff(A, B, n=2048):
    """Two-sided sup-inf distance estimated from boundary samples (shapely distances)."""
    import shapely

    pa, pb = shapely.Polygon(A.vertices), shapely.Polygon(B.vertices)
    sa = boundary_samples(A.vertices, n)
    sb = boundary_samples(B.vertices, n)
    da = shapely.distance(shapely.points(sa), pb).max()
    db = shapely.distance(shapely.points(sb), pa).max()
    return float(max(da, db))


def _perimeter(P):
    v = np.asarray(P.vertices)
    return float(np.hypot(*(np.roll(v, -1, axis=0) - v).T).sum())


def test_identical_sets_have_zero_distance(cross):
    for sn in (E, Directional((1, 2))):
        assert pseudo_distance(cross, cross, sn) == 0.0


def test_translate_square(unit_square):
    T = _translate(unit_square, (0.25, 0.0))
    assert pseudo_distance(unit_square, T, E) == pytest.approx(0.25, abs=1e-15)
    assert pseudo_distance(unit_square, T, Directional((0, 1))) == 0.0
    assert pseudo_distance(unit_square, T, Directional((1, 0))) == pytest.approx(0.25, abs=1e-15)


def test_directional_normalizes_and_rejects_zero():
    assert Directional((3, 4)).u == pytest.approx((0.6, 0.8))
    with pytest.raises(InputError):
        Directional((0, 0))


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-3, 3))
def test_seminorm_axioms(x0, x1, y0, y1, s):
    for sn in (E, Directional((0.3, -0.7))):
        x, y = (x0, x1), (y0, y1)
        assert sn(x) >= 0
        assert sn((s * x0, s * x1)) == pytest.approx(abs(s) * sn(x), rel=1e-12, abs=1e-12)
        assert sn((x0 + y0, x1 + y1)) <= sn(x) + sn(y) + 1e-12


def test_family_record_round_trip():
    fam = SeminormFamily((E, Directional((0, 1))))
    assert SeminormFamily.from_record(fam.to_record()) == fam
    with pytest.raises(InputError):
        SeminormFamily.from_record({"seminorms": []})


def test_euclidean_distance_requires_star_shaped(cross):
    with pytest.raises(NotStarShaped):
        pseudo_distance(shapes.zigzag(), cross, E)


def test_pseudometric_axioms(rng):
    fam = (E, Directional((1, 0)), Directional((1, 1)))
    for _ in range(30):
        A, B, C = (_translate(shapes.random_star_polygon(rng), rng.normal(scale=0.3, size=2)) for _ in range(3))
        for sn in fam:
            ab, ba = pseudo_distance(A, B, sn), pseudo_distance(B, A, sn)
            assert ab == pytest.approx(ba, abs=1e-12)
            assert ab <= pseudo_distance(A, C, sn) + pseudo_distance(C, B, sn) + 1e-9


def test_exact_distance_matches_sampling(rng):
    for _ in range(25):
        A = shapes.random_star_polygon(rng)
        B = _translate(shapes.random_star_polygon(rng), rng.normal(scale=0.2, size=2))
        exact = pseudo_distance(A, B, E)
        est = _sampled_hausdorff(A, B)
        resolution = max(_perimeter(A), _perimeter(B)) / 2048
        # sampling only sees a subset of the boundary: it never overshoots
        assert est <= exact + 1e-12
        assert exact - est <= resolution


def test_densify_cross_hand_chain(cross):
    res = densify(cross, (0.0, 0.0), [(E, 0.05)])
    t = 0.05 / (2 * math.sqrt(10))
    assert res.t_used == pytest.approx(t, rel=1e-14)
    assert res.per_seminorm_distance[0] <= t * math.sqrt(10) + 1e-12
    assert res.alpha_lower == pytest.approx(t / (1 + t))


def test_densify_convex_is_identity(rng):
    for _ in range(10):
        K = shapes.random_convex_polygon(rng)
        res = densify(K, K.centroid, [(E, 0.1), (Directional((0, 1)), 0.05)])
        assert set(res.s_prime.vertices) == set(K.vertices)
        assert res.per_seminorm_distance == (0.0, 0.0)


def test_densify_spiked_cross():
    S = shapes.spiked_cross()
    res = densify(S, (0.0, 0.0), [(E, 0.1)])
    assert res.per_seminorm_distance[0] < 0.1
    assert res.alpha_lower > 0
    assert convexity_index_at(res.s_prime, (0.0, 0.0)).alpha_p >= res.alpha_lower - 1e-12


def test_densify_union_matches_shapely(rng):
    import shapely

    # a large eps makes the shrunken hull stick out of S so the union is non-trivial
    for _ in range(20):
        S = shapes.random_nonconvex_star_polygon(rng)
        res = densify(S, (0.0, 0.0), [(E, 50.0)])
        hull = shapely.convex_hull(shapely.MultiPoint(S.vertices))
        shrunk = shapely.affinity.scale(hull, res.t_used, res.t_used, origin=(0, 0))
        ref = shapely.Polygon(S.vertices).union(shrunk)
        got = shapely.Polygon(res.s_prime.vertices)
        assert got.symmetric_difference(ref).area < 1e-9


def test_densify_invariants(rng):
    for _ in range(20):
        S = shapes.random_nonconvex_star_polygon(rng)
        res = densify(S, (0.0, 0.0), [(E, float(rng.uniform(0.01, 3)))])
        codes = contains_many(res.s_prime, S.array)
        assert np.all(codes >= Containment.ON_BOUNDARY)
        assert is_star_center(res.s_prime, (0.0, 0.0))
        assert convexity_index_at(res.s_prime, (0.0, 0.0)).alpha_p >= res.alpha_lower - 1e-12


def test_densify_errors(cross):
    with pytest.raises(EmptyEpsList):
        densify(cross, (0.0, 0.0), [])
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(InvalidEpsilon):
            densify(cross, (0.0, 0.0), [(E, bad)])
    with pytest.raises(NotStarCenter):
        densify(cross, (2.0, 0.0), [(E, 0.1)])


def test_densify_record(cross):
    rec = densify(cross, (0.0, 0.0), [(E, 0.05)]).to_record()
    assert rec["kind"] == "densify"
    assert rec["distances"][0]["seminorm"] == {"kind": "euclidean"}
    assert rec["s_prime"]["kind"] == "polygon"


def test_densify_deep_notch_small_eps(rng):
    import shapely

    for _ in range(20):
        P = shapes.random_star_polygon(rng)
        v = [list(q) for q in P.vertices]
        v[0] = [1e-3 * v[0][0], 1e-3 * v[0][1]]
        S = validate_simple(v)
        res = densify(S, (0.0, 0.0), [(E, 0.05)])
        assert res.s_prime != S
        assert res.per_seminorm_distance[0] < 0.05
        hull = shapely.convex_hull(shapely.MultiPoint(S.vertices))
        shrunk = shapely.affinity.scale(hull, res.t_used, res.t_used, origin=(0, 0))
        ref = shapely.Polygon(S.vertices).union(shrunk)
        assert shapely.Polygon(res.s_prime.vertices).symmetric_difference(ref).area < 1e-12
        assert convexity_index_at(res.s_prime, (0.0, 0.0)).alpha_p >= res.alpha_lower - 1e-12
