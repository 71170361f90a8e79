import math

import numpy as np
import pytest

from starindex import shapes
from starindex.errors import InputError, InputOutsideS
from starindex.geometry import StarPolygon
from starindex.selfmap import (
    AffineThenProject,
    Compose,
    Constant,
    RadialDistort,
    RotateAboutThenProject,
    evaluate,
    project_radial,
    spec_from_record,
    spec_to_record,
    trace,
    validate_spec,
)


def random_spec(rng, S: StarPolygon, depth: int = 4):
    """A random spec tree; constants are drawn from inside S."""
    kinds = ["affine", "rotate", "distort", "constant"] + (["compose"] * 2 if depth > 1 else [])
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "affine":
        return AffineThenProject(tuple(map(tuple, rng.normal(scale=1.2, size=(2, 2)))), tuple(rng.normal(size=2)))
    if kind == "rotate":
        return RotateAboutThenProject(tuple(rng.normal(scale=0.5, size=2)), float(rng.uniform(-math.pi, math.pi)))
    if kind == "distort":
        return RadialDistort(float(rng.uniform(0.3, 3.0)))
    if kind == "constant":
        return Constant(random_points(rng, S, 1)[0])
    return Compose(tuple(random_spec(rng, S, depth - 1) for _ in range(int(rng.integers(1, 4)))))


def random_points(rng, S: StarPolygon, n: int):
    t = rng.uniform(0, 2 * math.pi, n)
    r = S.profile.radii(t) * np.sqrt(rng.uniform(0, 1, n))
    px, py = S.center
    return [(px + ri * math.cos(ti), py + ri * math.sin(ti)) for ri, ti in zip(r, t)]


def test_constant(cross_star):
    assert evaluate(Constant((3, 0)), cross_star, (-1, -1)) == (3.0, 0.0)


def test_rotation_symmetry(cross_star):
    out = evaluate(RotateAboutThenProject((0, 0), math.pi / 2), cross_star, (2, 0))
    assert out == pytest.approx((0.0, 2.0), abs=1e-15)


def test_affine_clamps_radially(cross_star):
    out = evaluate(AffineThenProject(((2, 0), (0, 2))), cross_star, (2, 0))
    assert out == pytest.approx((3.0, 0.0), abs=1e-15)


@pytest.mark.parametrize("y,expected", [((0.5, 0.5), (0.5, 0.5)), ((4, 0), (3, 0)), ((2, 2), (1, 1))])
def test_project_radial_examples(cross_star, y, expected):
    assert project_radial(cross_star, y) == pytest.approx(expected, abs=1e-15)


def test_radial_distort(cross_star):
    # gauge 2/3 at (2, 0) squared gives 4/9 of the boundary radius 3
    assert evaluate(RadialDistort(2.0), cross_star, (2, 0)) == pytest.approx((4 / 3, 0.0))
    assert evaluate(RadialDistort(0.5), cross_star, (0, 0)) == (0.0, 0.0)
    with pytest.raises(InputError):
        RadialDistort(0.0)


def test_input_outside_rejected(cross_star):
    with pytest.raises(InputOutsideS):
        evaluate(RadialDistort(1.0), cross_star, (2.5, 2.5))
    with pytest.raises(InputOutsideS):
        evaluate(Constant((5, 5)), cross_star, (0, 0))
    with pytest.raises(InputOutsideS):
        validate_spec(Compose((RadialDistort(1.0), Constant((5, 5)))), cross_star)


def test_range_containment(rng):
    total = 0
    for _ in range(20):
        S = StarPolygon(shapes.random_nonconvex_star_polygon(rng), (0.0, 0.0))
        for _ in range(5):
            spec = random_spec(rng, S)
            for x in random_points(rng, S, 100):
                y = evaluate(spec, S, x)
                assert S.gauge(y) <= 1 + 1e-9
                total += 1
    assert total == 10_000


def test_trace_records_every_primitive(cross_star):
    spec = Compose((RotateAboutThenProject((0, 0), math.pi / 2), AffineThenProject(((0.5, 0), (0, 0.5)), (0.2, 0))))
    tr = trace(spec, cross_star, (2, 0))
    assert [name for name, _ in tr.steps] == ["RotateAboutThenProject", "AffineThenProject"]
    assert tr.output == pytest.approx((0.2, 1.0))
    assert tr.output == tr.steps[-1][1]


def test_continuity_probe(rng):
    """No jumps at the 1e-6 scale for maps with Lipschitz primitives."""
    for _ in range(30):
        S = StarPolygon(shapes.random_nonconvex_star_polygon(rng), (0.0, 0.0))
        spec = random_spec(rng, S)
        for x in random_points(rng, S, 30):
            x = (0.98 * x[0], 0.98 * x[1])
            d = rng.normal(size=2)
            d = 1e-6 * d / np.linalg.norm(d)
            x2 = (x[0] + d[0], x[1] + d[1])
            if S.gauge(x2) > 1 or math.hypot(*x) < 1e-3:
                continue
            y1, y2 = evaluate(spec, S, x), evaluate(spec, S, x2)
            assert math.dist(y1, y2) < 1e-3


def test_projection_idempotent(rng):
    for _ in range(10):
        S = StarPolygon(shapes.random_nonconvex_star_polygon(rng), (0.0, 0.0))
        for y in rng.normal(scale=2, size=(100, 2)):
            once = project_radial(S, tuple(y))
            assert project_radial(S, once) == pytest.approx(once, abs=1e-15)


def test_constant_independent_of_x(cross_star, rng):
    f = Constant((0.5, 2.0))
    assert {evaluate(f, cross_star, x) for x in random_points(rng, cross_star, 50)} == {(0.5, 2.0)}


def test_record_round_trip(rng, cross_star):
    for _ in range(50):
        spec = random_spec(rng, cross_star)
        again = spec_from_record(spec_to_record(spec))
        x = random_points(rng, cross_star, 1)[0]
        assert evaluate(again, cross_star, x) == pytest.approx(evaluate(spec, cross_star, x), abs=1e-12)


def test_record_errors():
    with pytest.raises(InputError):
        spec_from_record({"kind": "warp"})
    with pytest.raises(InputError):
        spec_from_record({"kind": "affine"})


def test_spec_file_example(cross_star):
    rec = {"kind": "compose", "maps": [{"kind": "rotate", "center": [0, 0], "angle_deg": 90},
                                        {"kind": "affine", "matrix": [[0.5, 0], [0, 0.5]], "offset": [0.2, 0]}]}
    f = spec_from_record(rec)
    assert evaluate(f, cross_star, (2, 0)) == pytest.approx((0.2, 1.0))
