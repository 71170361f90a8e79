"""Declarative continuous self-maps of a star-shaped polygon.

Every primitive ends in a radial retraction onto S about the star center,
which is continuous because the center is strictly inside the kernel (a
nearest-point projection onto a non-convex set would not be).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple, Union

from .errors import InputError, InputOutsideS
from .geometry import Point2, StarPolygon, as_point

GAUGE_SLACK = 1e-9


@dataclass(frozen=True)
class Constant:
    q: Point2

    def __post_init__(self):
        object.__setattr__(self, "q", as_point(self.q))


@dataclass(frozen=True)
class AffineThenProject:
    """``x -> M x + offset`` followed by the radial retraction."""

    matrix: Tuple[Tuple[float, float], Tuple[float, float]]
    offset: Point2 = (0.0, 0.0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        object.__setattr__(self, "matrix", ((float(a), float(b)), (float(c), float(d))))
        object.__setattr__(self, "offset", as_point(self.offset))


@dataclass(frozen=True)
class RotateAboutThenProject:
    center: Point2
    angle: float  # radians

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True)
class RadialDistort:
    """In star coordinates about p, send gauge value rho to rho**exponent."""

    exponent: float

    def __post_init__(self):
        if not (self.exponent > 0 and math.isfinite(self.exponent)):
            raise InputError("RadialDistort exponent must be positive")
        object.__setattr__(self, "exponent", float(self.exponent))


@dataclass(frozen=True)
class Compose:
    """Apply ``maps`` left to right."""

    maps: Tuple["SelfMapSpec", ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))


SelfMapSpec = Union[Constant, AffineThenProject, RotateAboutThenProject, RadialDistort, Compose]


@dataclass(frozen=True)
class MapEvalTrace:
    input: Point2
    output: Point2
    steps: Tuple[Tuple[str, Point2], ...]


def project_radial(S: StarPolygon, y: Point2) -> Point2:
    """Identity on S; outside S, the boundary point on the ray from p through y."""
    rho = S.gauge(y)
    if rho <= 1.0:
        return (float(y[0]), float(y[1]))
    px, py = S.center
    return (px + (y[0] - px) / rho, py + (y[1] - py) / rho)


def _apply(spec: SelfMapSpec, S: StarPolygon, x: Point2, steps: List) -> Point2:
    if isinstance(spec, Constant):
        out = spec.q
    elif isinstance(spec, AffineThenProject):
        (a, b), (c, d) = spec.matrix
        y = (a * x[0] + b * x[1] + spec.offset[0], c * x[0] + d * x[1] + spec.offset[1])
        out = project_radial(S, y)
    elif isinstance(spec, RotateAboutThenProject):
        cx, cy = spec.center
        cs, sn = math.cos(spec.angle), math.sin(spec.angle)
        dx, dy = x[0] - cx, x[1] - cy
        out = project_radial(S, (cx + cs * dx - sn * dy, cy + sn * dx + cs * dy))
    elif isinstance(spec, RadialDistort):
        rho = S.gauge(x)
        if rho == 0.0:
            out = S.center
        else:
            k = min(rho, 1.0) ** spec.exponent / rho
            px, py = S.center
            out = (px + k * (x[0] - px), py + k * (x[1] - py))
    elif isinstance(spec, Compose):
        out = x
        for sub in spec.maps:
            out = _apply(sub, S, out, steps)
        return out
    else:
        raise TypeError(f"not a self-map spec: {spec!r}")
    steps.append((type(spec).__name__, out))
    return out


def _check_inside(S: StarPolygon, x: Point2, what: str) -> None:
    if S.gauge(x) > 1.0 + GAUGE_SLACK:
        raise InputOutsideS(f"{what} {x} lies outside S")


def evaluate(spec: SelfMapSpec, S: StarPolygon, x: Point2) -> Point2:
    """Evaluate the self-map at ``x``; the result always lies in S."""
    _check_inside(S, x, "input")
    if isinstance(spec, Constant):
        _check_inside(S, spec.q, "constant target")
        return spec.q
    return _apply(spec, S, (float(x[0]), float(x[1])), [])


def trace(spec: SelfMapSpec, S: StarPolygon, x: Point2) -> MapEvalTrace:
    _check_inside(S, x, "input")
    steps: List = []
    out = _apply(spec, S, (float(x[0]), float(x[1])), steps)
    return MapEvalTrace(tuple(x), out, tuple(steps))


def validate_spec(spec: SelfMapSpec, S: StarPolygon) -> None:
    """Reject constant targets outside S before any evaluation."""
    if isinstance(spec, Constant):
        _check_inside(S, spec.q, "constant target")
    elif isinstance(spec, Compose):
        for sub in spec.maps:
            validate_spec(sub, S)


def spec_from_record(rec: dict) -> SelfMapSpec:
    """Parse a map record; angles are given in degrees."""
    try:
        kind = rec["kind"]
        if kind == "constant":
            return Constant(tuple(rec["q"]))
        if kind == "affine":
            return AffineThenProject(tuple(tuple(r) for r in rec["matrix"]), tuple(rec.get("offset", (0.0, 0.0))))
        if kind == "rotate":
            return RotateAboutThenProject(tuple(rec["center"]), math.radians(float(rec["angle_deg"])))
        if kind == "radial_distort":
            return RadialDistort(float(rec["exponent"]))
        if kind == "compose":
            return Compose(tuple(spec_from_record(r) for r in rec["maps"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed map record {rec!r}: {exc}") from exc
    raise InputError(f"unknown map kind {kind!r}")


def spec_to_record(spec: SelfMapSpec) -> dict:
    if isinstance(spec, Constant):
        return {"kind": "constant", "q": list(spec.q)}
    if isinstance(spec, AffineThenProject):
        return {"kind": "affine", "matrix": [list(r) for r in spec.matrix], "offset": list(spec.offset)}
    if isinstance(spec, RotateAboutThenProject):
        return {"kind": "rotate", "center": list(spec.center), "angle_deg": math.degrees(spec.angle)}
    if isinstance(spec, RadialDistort):
        return {"kind": "radial_distort", "exponent": spec.exponent}
    if isinstance(spec, Compose):
        return {"kind": "compose", "maps": [spec_to_record(m) for m in spec.maps]}
    raise TypeError(f"not a self-map spec: {spec!r}")
