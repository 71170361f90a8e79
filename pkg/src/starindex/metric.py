"""Seminorm pseudometrics on star-shaped polygons and the densification step.

A finite family of seminorms stands in for a local base of convex
neighbourhoods of the origin: the Euclidean norm and directional
projections ``|<x, u>|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import EmptyEpsList, InputError, InvalidEpsilon, NotStarCenter, NotStarShaped
from .geometry import (
    Containment,
    Point2,
    SimplePolygon,
    StarPolygon,
    as_point,
    contains_many,
    convex_hull,
    segment_distances,
    union_about_center,
)
from .star_kernel import is_star_center, kernel


@dataclass(frozen=True)
class Euclidean:
    kind = "euclidean"

    def __call__(self, v: Point2) -> float:
        return math.hypot(v[0], v[1])

    def to_record(self) -> dict:
        return {"kind": "euclidean"}


@dataclass(frozen=True)
class Directional:
    """Seminorm ``|<x, u>|`` for a unit vector ``u``."""

    u: Point2
    kind = "directional"

    def __post_init__(self):
        ux, uy = as_point(self.u)
        n = math.hypot(ux, uy)
        if n == 0.0:
            raise InputError("directional seminorm needs a nonzero vector")
        object.__setattr__(self, "u", (ux / n, uy / n))

    def __call__(self, v: Point2) -> float:
        return abs(v[0] * self.u[0] + v[1] * self.u[1])

    def to_record(self) -> dict:
        return {"kind": "directional", "u": list(self.u)}


Seminorm = Union[Euclidean, Directional]


def seminorm_from_record(rec: dict) -> Seminorm:
    kind = rec.get("kind")
    if kind == "euclidean":
        return Euclidean()
    if kind == "directional":
        return Directional(tuple(rec["u"]))
    raise InputError(f"unknown seminorm kind {kind!r}")


@dataclass(frozen=True)
class SeminormFamily:
    entries: Tuple[Seminorm, ...]

    def __post_init__(self):
        if not self.entries:
            raise InputError("seminorm family needs at least one entry")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_record(cls, rec: dict) -> "SeminormFamily":
        try:
            return cls(tuple(seminorm_from_record(r) for r in rec["seminorms"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed seminorm family: {exc}") from exc

    def to_record(self) -> dict:
        return {"seminorms": [e.to_record() for e in self.entries]}


def region_distance(B: SimplePolygon, pts) -> np.ndarray:
    """Euclidean distance from each point to the closed region bounded by B."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    a, b = B.edge_arrays
    d = segment_distances(pts, a, b).min(axis=1)
    inside = contains_many(B, pts, tol=0.0) == Containment.INSIDE
    return np.where(inside, 0.0, d)


def _edge_candidates(a0, e, verts, lines, seg_a, seg_b) -> np.ndarray:
    """Parameters s in [0, 1] along ``a0 + s e`` where two B features tie.

    Between consecutive candidates a single feature is nearest and the
    distance to it is convex along the segment, so the maximum of the
    distance to B over the segment sits at a candidate or an endpoint.
    """
    out = [np.array([0.0, 1.0])]
    ee = float(e @ e)
    # vertex / vertex: perpendicular bisectors
    if len(verts) >= 2:
        i, j = np.triu_indices(len(verts), 1)
        w = verts[j] - verts[i]
        k = np.einsum("ij,ij->i", verts[j], verts[j]) - np.einsum("ij,ij->i", verts[i], verts[i])
        den = 2 * (w @ e)
        ok = np.abs(den) > 1e-300
        out.append((k[ok] - 2 * (w[ok] @ a0)) / den[ok])
    if len(lines):
        n, c = lines[:, :2], lines[:, 2]
        # line / line: angle bisectors
        if len(lines) >= 2:
            i, j = np.triu_indices(len(lines), 1)
            for sgn in (1.0, -1.0):
                nn = n[i] - sgn * n[j]
                den = nn @ e
                ok = np.abs(den) > 1e-300
                out.append((c[i][ok] - sgn * c[j][ok] - nn[ok] @ a0) / den[ok])
        # slab boundaries: the foot of the perpendicular reaches an edge endpoint
        t = seg_b - seg_a
        den = t @ e
        ok = np.abs(den) > 1e-300
        for ends in (seg_a, seg_b):
            out.append(np.einsum("ij,ij->i", t[ok], ends[ok] - a0) / den[ok])
        # vertex / line: parabolas
        if len(verts):
            vi, lj = np.meshgrid(np.arange(len(verts)), np.arange(len(lines)), indexing="ij")
            vi, lj = vi.ravel(), lj.ravel()
            w = a0 - verts[vi]
            nl = n[lj]
            h = nl @ a0 - c[lj]
            ne = nl @ e
            qa = ee - ne * ne
            qb = 2 * (w @ e - h * ne)
            qc = np.einsum("ij,ij->i", w, w) - h * h
            disc = qb * qb - 4 * qa * qc
            quad = (np.abs(qa) > 1e-14 * ee) & (disc >= 0)
            sq = np.sqrt(np.where(quad, disc, 0.0))
            qa_safe = np.where(quad, qa, 1.0)
            out.append(((-qb - sq) / (2 * qa_safe))[quad])
            out.append(((-qb + sq) / (2 * qa_safe))[quad])
            lin = (~quad) & (np.abs(qb) > 1e-300)
            out.append((-qc[lin] / qb[lin]))
    s = np.concatenate(out)
    s = s[np.isfinite(s)]
    return np.clip(s[(s >= -1e-12) & (s <= 1 + 1e-12)], 0.0, 1.0)


def directed_hausdorff(A: SimplePolygon, B: SimplePolygon) -> float:
    """``sup_{a in A} dist(a, B)`` for polygon regions, B star-shaped.

    B star-shaped about some p means dist(., B) grows strictly along rays
    leaving p, so no interior point of A is a local maximum and the sup is
    attained on the boundary of A, where it is found by exact candidates.
    """
    va = A.array
    best = float(region_distance(B, va).max())
    bv = B.array
    ba, bb = B.edge_arrays
    d = bb - ba
    lens = np.hypot(d[:, 0], d[:, 1])
    normals = np.column_stack([d[:, 1] / lens, -d[:, 0] / lens])
    lines = np.column_stack([normals, np.einsum("ij,ij->i", normals, ba)])
    dv = region_distance(B, va)
    nA = len(va)
    for k in range(nA):
        a0, a1 = va[k], va[(k + 1) % nA]
        e = a1 - a0
        le = math.hypot(*e)
        ubound = 0.5 * (dv[k] + dv[(k + 1) % nA] + le)
        if ubound <= best:
            continue
        # features farther than the bound from this edge can never be nearest on it
        vd = segment_distances(bv, a0[None], a1[None])[:, 0]
        vsel = vd <= ubound
        ed = np.minimum.reduce([
            segment_distances(ba, a0[None], a1[None])[:, 0],
            segment_distances(bb, a0[None], a1[None])[:, 0],
            segment_distances(a0[None], ba, bb)[0],
            segment_distances(a1[None], ba, bb)[0],
        ])
        esel = ed <= ubound
        s = _edge_candidates(a0, e, bv[vsel], lines[esel], ba[esel], bb[esel])
        pts = a0[None, :] + s[:, None] * e[None, :]
        best = max(best, float(region_distance(B, pts).max()))
    return best


def _support_interval(P: SimplePolygon, u: Point2) -> Tuple[float, float]:
    proj = P.array @ np.asarray(u)
    return float(proj.min()), float(proj.max())


def _require_star(P: SimplePolygon, name: str) -> None:
    if not kernel(P).is_star_shaped:
        raise NotStarShaped(f"{name} is not star-shaped; the pseudometric is defined on star-shaped sets")


def pseudo_distance(A: SimplePolygon, B: SimplePolygon, sn: Seminorm) -> float:
    """Two-sided sup-inf distance between A and B measured by the seminorm."""
    if A == B:
        return 0.0
    if isinstance(sn, Directional):
        # the image of a connected set under a linear functional is an interval
        a0, a1 = _support_interval(A, sn.u)
        b0, b1 = _support_interval(B, sn.u)
        return max(abs(a0 - b0), abs(a1 - b1))
    _require_star(A, "A")
    _require_star(B, "B")
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


@dataclass(frozen=True)
class DensifyResult:
    s_prime: SimplePolygon
    t_used: float
    per_seminorm_distance: Tuple[float, ...]
    alpha_lower: float
    p: Point2
    seminorms: Tuple[Seminorm, ...]
    eps: Tuple[float, ...]

    def to_record(self) -> dict:
        return {
            "kind": "densify",
            "p": list(self.p),
            "t_used": self.t_used,
            "alpha_lower": self.alpha_lower,
            "distances": [
                {"seminorm": sn.to_record(), "eps": e, "distance": d}
                for sn, e, d in zip(self.seminorms, self.eps, self.per_seminorm_distance)
            ],
            "s_prime": self.s_prime.to_record(),
        }


def densify(S: SimplePolygon, p: Point2, eps: Sequence[Tuple[Seminorm, float]]) -> DensifyResult:
    """Attach a shrunken copy of the hull at ``p`` so the index becomes positive.

    ``t`` is the largest value with ``2 t sup_{c in co(S) - p} rho(c) <= eps``
    for every requested pair, capped at 1; then ``S' = S u (p + t (co(S) - p))``
    lies within ``eps`` of S in each seminorm and its index at ``p`` is at
    least ``t / (1 + t)``.
    """
    eps = list(eps)
    if not eps:
        raise EmptyEpsList("densify needs at least one (seminorm, eps) pair")
    for _, e in eps:
        if not (math.isfinite(e) and e > 0):
            raise InvalidEpsilon(f"eps must be positive and finite, got {e!r}")
    p = as_point(p)
    if not is_star_center(S, p):
        raise NotStarCenter(f"S is not star-shaped about {p}")
    star = StarPolygon(S, p)
    C = convex_hull(S)
    rel = [(x - p[0], y - p[1]) for x, y in C.vertices]
    t = 1.0
    for sn, e in eps:
        m = max(sn(v) for v in rel)
        if m > 0:
            t = min(t, e / (2 * m))
    shrunk = StarPolygon(C.scaled_about(p, t), p)
    s_prime = union_about_center(star, shrunk)
    dists = tuple(pseudo_distance(S, s_prime, sn) for sn, _ in eps)
    return DensifyResult(
        s_prime=s_prime,
        t_used=t,
        per_seminorm_distance=dists,
        alpha_lower=t / (1 + t),
        p=p,
        seminorms=tuple(sn for sn, _ in eps),
        eps=tuple(float(e) for _, e in eps),
    )
