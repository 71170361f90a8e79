"""Fixed points on convex polygons and eigencurves of self-maps.

For a self-map f of S with index alpha at p, the map
``g_lam(z) = lam * alpha * (f(z + p) - p)`` sends the convex polygon
``lam * alpha * (co(S) - p)`` into itself, so it has a fixed point z, and
``x = z + p`` solves ``f(x) = p + (x - p) / (lam * alpha)``.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import logging
import math
import statistics
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import NotConvex, NumericallyIdentity, RangeEscape, SolverBudget, ZeroIndex
from .gauge_index import convexity_index_at
from .geometry import TOL_GEOM, Point2, SimplePolygon, StarPolygon, convex_hull, edge_margin
from .selfmap import SelfMapSpec, evaluate, validate_spec

log = logging.getLogger(__name__)

TOL_FP = 1e-8
TOL_EIG = 1e-6
BUDGET = 10**6
DEFAULT_LAMBDAS = tuple(round(1.0 - 0.05 * k, 12) for k in range(20))
SEPARATION_MIN = 1e-12

Map2 = Callable[[Point2], Point2]


@dataclass(frozen=True)
class FixedPointResult:
    point: Point2
    residual: float
    certified: bool
    cells_explored: int
    evaluations: int


class _Found(Exception):
    pass


class _OutOfBudget(Exception):
    pass


class _Solver:
    """Residual bookkeeping shared by the subdivision search and the polisher."""

    def __init__(self, g: Map2, D: SimplePolygon, tol_fp: float, budget: int, range_tol: float):
        self.g = g
        self.tol_fp = tol_fp
        self.budget = budget
        self.range_tol = range_tol
        self.evals = 0
        self.cache: dict = {}
        self.best: Optional[Tuple[float, Point2]] = None
        self.edges = []
        for (x0, y0), (x1, y1) in D.edges:
            dx, dy = x1 - x0, y1 - y0
            ln = math.hypot(dx, dy)
            self.edges.append((-dy / ln, dx / ln, (-dy * x0 + dx * y0) / ln))
        x0, y0, x1, y1 = D.bbox
        self.scale = math.hypot(x1 - x0, y1 - y0)

    def margin(self, z: Point2) -> float:
        return min(a * z[0] + b * z[1] - c for a, b, c in self.edges)

    def __call__(self, z: Point2):
        hit = self.cache.get(z)
        if hit is not None:
            return hit
        if self.evals >= self.budget:
            raise _OutOfBudget
        self.evals += 1
        gz = self.g(z)
        gz = (float(gz[0]), float(gz[1]))
        if not (math.isfinite(gz[0]) and math.isfinite(gz[1])) or self.margin(gz) < -self.range_tol:
            raise RangeEscape(f"g{z} = {gz} leaves the domain")
        res = math.hypot(gz[0] - z[0], gz[1] - z[1])
        self.cache[z] = (gz, res)
        if self.best is None or res < self.best[0]:
            self.best = (res, z)
        if res < self.tol_fp:
            raise _Found
        return gz, res

    def polish(self, z: Point2, iters: int = 40) -> None:
        """Damped Newton on g(z) - z with a finite-difference Jacobian, kept inside D."""
        h0 = 1e-7 * self.scale
        for _ in range(iters):
            gz, res = self(z)
            cols = []
            for k in range(2):
                h = h0
                step = (z[0] + h, z[1]) if k == 0 else (z[0], z[1] + h)
                if self.margin(step) < 0:
                    h = -h0
                    step = (z[0] + h, z[1]) if k == 0 else (z[0], z[1] + h)
                    if self.margin(step) < 0:
                        return
                gs, _ = self(step)
                cols.append(((gs[0] - gz[0]) / h, (gs[1] - gz[1]) / h))
            a, c = cols[0][0] - 1.0, cols[0][1]
            b, d = cols[1][0], cols[1][1] - 1.0
            det = a * d - b * c
            if det == 0.0 or not math.isfinite(det):
                return
            rx, ry = gz[0] - z[0], gz[1] - z[1]
            dx = (-rx * d + ry * b) / det
            dy = (-ry * a + rx * c) / det
            t = 1.0
            for _ in range(30):
                cand = (z[0] + t * dx, z[1] + t * dy)
                if self.margin(cand) >= 0:
                    _, cres = self(cand)
                    if cres < res:
                        z = cand
                        break
                t *= 0.5
            else:
                return


def _centroid3(a, b, c):
    return ((a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0)


def brouwer_solve(g: Map2, D: SimplePolygon, tol_fp: float = TOL_FP, *, budget: int = BUDGET,
                  start: Optional[Point2] = None, range_tol: float = TOL_GEOM,
                  safety: float = 4.0, polish: bool = True) -> FixedPointResult:
    """Find z in the convex polygon D with ``|g(z) - z| < tol_fp``.

    Branch and bound over a triangulation of D: a cell with centroid c and
    covering radius R cannot hold a fixed point once
    ``|g(c) - c| - (1 + L) R > 0``, with L a finite-difference Lipschitz
    estimate over the cell inflated by ``safety``.  Surviving cells are split
    into four.  Each new best point is handed to a damped Newton polisher.
    If every cell gets pruned (L underestimated) the search restarts with a
    larger safety factor.  ``g`` leaving D raises RangeEscape.

    Running out of ``budget`` evaluations returns the best point seen with
    ``certified=False``.
    """
    if not D.is_convex():
        raise NotConvex("fixed-point domain must be convex")
    if tol_fp <= 0:
        raise ValueError("tol_fp must be positive")
    sv = _Solver(g, D, tol_fp, budget, range_tol)
    cells = 0
    centroid = D.centroid
    first = centroid if start is None or sv.margin(start) < 0 else (float(start[0]), float(start[1]))

    def result():
        res, z = sv.best
        return FixedPointResult(z, res, res < tol_fp, cells, sv.evals)

    try:
        sv(first)
        if polish:
            sv.polish(first)
        last_polished = sv.best[0]
        verts = list(D.vertices)
        for _ in range(4):
            heap: list = []
            tick = itertools.count()

            def push(tri):
                c = _centroid3(*tri)
                pts = (c,) + tri
                vals = [sv(q) for q in pts]
                lip = 0.0
                for (qa, (ga, _)), (qb, (gb, _)) in itertools.combinations(zip(pts, vals), 2):
                    dq = math.hypot(qa[0] - qb[0], qa[1] - qb[1])
                    if dq > 0:
                        lip = max(lip, math.hypot(ga[0] - gb[0], ga[1] - gb[1]) / dq)
                rad = max(math.hypot(q[0] - c[0], q[1] - c[1]) for q in tri)
                lb = vals[0][1] - (1.0 + safety * lip) * rad
                if lb <= 0 and rad > 1e-15 * sv.scale:
                    heapq.heappush(heap, (lb, next(tick), tri))

            for k in range(len(verts)):
                push((centroid, verts[k], verts[(k + 1) % len(verts)]))
            while heap:
                _, _, (a, b, c) = heapq.heappop(heap)
                cells += 1
                ab = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                bc = ((b[0] + c[0]) / 2, (b[1] + c[1]) / 2)
                ca = ((c[0] + a[0]) / 2, (c[1] + a[1]) / 2)
                for tri in ((a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)):
                    push(tri)
                if polish and sv.best[0] < 0.5 * last_polished:
                    last_polished = sv.best[0]
                    sv.polish(sv.best[1])
            log.debug("all cells pruned at safety %.1f; restarting", safety)
            safety *= 4.0
    except _Found:
        pass
    except _OutOfBudget:
        log.info("fixed-point budget of %d evaluations exhausted", budget)
    return result()


class Branch(str, enum.Enum):
    FIXED_AT_P = "FixedAtP"
    EIGEN_FAMILY = "EigenFamily"
    BOTH = "Both"


@dataclass(frozen=True)
class EigenSample:
    lam: float
    x: Point2
    residual: float
    branch_jump: bool = False


@dataclass(frozen=True)
class EigenCurve:
    samples: Tuple[EigenSample, ...]
    alpha_p: float
    p: Point2
    injectivity_certified: bool
    tol_eig: float = TOL_EIG

    @property
    def certified(self) -> bool:
        return all(s.residual < self.tol_eig for s in self.samples)

    def to_record(self, verdict: Optional[str] = None) -> dict:
        return {
            "kind": "eigencurve",
            "alpha_p": self.alpha_p,
            "p": list(self.p),
            "injectivity_certified": self.injectivity_certified,
            "samples": [
                {"lambda": s.lam, "x": list(s.x), "residual": s.residual, "branch_jump": s.branch_jump}
                for s in self.samples
            ],
            "verdict": verdict,
        }


def eigen_residual(fx: Point2, x: Point2, p: Point2, lam: float, alpha: float) -> float:
    s = lam * alpha
    return math.hypot(fx[0] - p[0] - (x[0] - p[0]) / s, fx[1] - p[1] - (x[1] - p[1]) / s)


def _check_lambdas(lambdas: Sequence[float]) -> list:
    lams = sorted({float(v) for v in lambdas}, reverse=True)
    if not lams or any(not (0.0 < v <= 1.0) for v in lams):
        raise ValueError("lambda values must lie in (0, 1]")
    return lams


def _trace_curve(S: StarPolygon, fcall: Map2, alpha: float, lambdas, tol_eig, tol_fp, budget) -> EigenCurve:
    p = S.center
    px, py = p
    rel = [(x - px, y - py) for x, y in convex_hull(S.polygon).vertices]
    lams = _check_lambdas(lambdas)
    samples = []
    prev: Optional[Tuple[float, Point2]] = None
    for lam in lams:
        s = lam * alpha
        D = SimplePolygon(tuple((s * x, s * y) for x, y in rel))

        def g(z, s=s):
            fx, fy = fcall((z[0] + px, z[1] + py))
            return (s * (fx - px), s * (fy - py))

        start = None if prev is None else (prev[1][0] * lam / prev[0], prev[1][1] * lam / prev[0])
        res = brouwer_solve(g, D, min(tol_fp, 0.5 * tol_eig * s), budget=budget, start=start)
        if not res.certified:
            raise SolverBudget(f"no certified fixed point for lambda={lam} (residual {res.residual:.3e})")
        z = res.point
        x = (z[0] + px, z[1] + py)
        samples.append(EigenSample(lam, x, eigen_residual(fcall(x), x, p, lam, alpha)))
        prev = (lam, z)

    steps = [math.dist(a.x, b.x) for a, b in zip(samples, samples[1:])]
    if steps:
        med = statistics.median(steps)
        if med > 0:
            samples = [samples[0]] + [
                EigenSample(sm.lam, sm.x, sm.residual, st > 10 * med) for sm, st in zip(samples[1:], steps)
            ]

    # x_lam != p for every sample forces distinct points for distinct lambdas,
    # since (lam - lam') (x - p) = 0 whenever x_lam = x_lam'; the pairwise
    # check guards against that argument failing at the resolution of floats
    xs = np.array([sm.x for sm in samples])
    away = all(math.dist(sm.x, p) > tol_eig for sm in samples)
    sep = np.inf
    if len(xs) > 1:
        diff = np.hypot(xs[:, None, 0] - xs[None, :, 0], xs[:, None, 1] - xs[None, :, 1])
        sep = diff[np.triu_indices(len(xs), 1)].min()
    injective = bool(away and sep > SEPARATION_MIN)
    return EigenCurve(tuple(samples), alpha, p, injective, tol_eig)


def _index(S: StarPolygon, alpha: Optional[float], tol: float) -> float:
    if alpha is None:
        alpha = convexity_index_at(S.polygon, S.center).alpha_p
    if alpha <= tol:
        raise ZeroIndex(f"convexity index {alpha!r} at {S.center} is not positive")
    return alpha


def eigencurve(S: StarPolygon, f: SelfMapSpec, lambdas: Sequence[float] = DEFAULT_LAMBDAS,
               tol_eig: float = TOL_EIG, *, tol_fp: float = TOL_FP, alpha: Optional[float] = None,
               budget: int = BUDGET) -> EigenCurve:
    """Solve ``f(x) = p + (x - p) / (lam * alpha_p)`` for each lambda.

    Lambdas are processed in decreasing order; each solve is warm-started
    from the previous solution rescaled into the smaller domain, so the
    reported points follow one branch where possible.  Samples whose step
    exceeds ten times the median step are flagged as branch jumps.
    """
    validate_spec(f, S)
    alpha = _index(S, alpha, tol_eig)
    return _trace_curve(S, lambda x: evaluate(f, S, x), alpha, lambdas, tol_eig, tol_fp, budget)


@dataclass(frozen=True)
class DichotomyVerdict:
    branch: Branch
    fp_residual_at_p: float
    curve: Optional[EigenCurve]

    def to_record(self) -> dict:
        rec = self.curve.to_record(self.branch.value) if self.curve else {"verdict": self.branch.value}
        rec["fp_residual_at_p"] = self.fp_residual_at_p
        return rec


def check_dichotomy(S: StarPolygon, f: SelfMapSpec, n_lambda: int = 20, tol: float = TOL_EIG, *,
                    tol_fp: float = TOL_FP, budget: int = BUDGET) -> DichotomyVerdict:
    """Decide which alternative holds: p fixed, an injective eigen family, or both."""
    if n_lambda < 1:
        raise ValueError("n_lambda must be at least 1")
    validate_spec(f, S)
    alpha = _index(S, None, tol)
    p = S.center
    fp_res = math.dist(evaluate(f, S, p), p)
    lambdas = [k / n_lambda for k in range(n_lambda, 0, -1)]
    curve = eigencurve(S, f, lambdas, tol, tol_fp=tol_fp, alpha=alpha, budget=budget)
    fixed = fp_res < tol
    family = curve.certified and curve.injectivity_certified
    if fixed and family:
        branch = Branch.BOTH
    elif fixed:
        branch = Branch.FIXED_AT_P
    elif family:
        branch = Branch.EIGEN_FAMILY
    else:
        raise SolverBudget(
            f"f(p) is displaced by {fp_res:.3e} but the traced curve did not certify an injective family")
    return DichotomyVerdict(branch, fp_res, curve)


def eigencurve_convex(K: SimplePolygon, f: SelfMapSpec, lambdas: Sequence[float] = DEFAULT_LAMBDAS,
                      tol: float = TOL_EIG, *, scan: int = 41, tol_fp: float = TOL_FP,
                      budget: int = BUDGET, map_center: Optional[Point2] = None) -> EigenCurve:
    """Eigencurve on a convex set about a scanned point that f moves.

    On a convex set the index is 1 at every interior point, so the relation
    solved is ``f(x) = p + (x - p) / lam``.  The map itself is evaluated with
    its retraction centered at ``map_center`` (default: centroid of K); the
    eigen center ``p`` is the interior scan point with the largest
    displacement ``|f(p) - p|``.
    """
    if not K.is_convex():
        raise NotConvex("eigencurve_convex needs a convex polygon")
    host = StarPolygon(K, K.centroid if map_center is None else map_center)
    validate_spec(f, host)
    x0, y0, x1, y1 = K.bbox
    best: Optional[Tuple[float, Point2]] = None
    for x in np.linspace(x0, x1, scan + 2)[1:-1]:
        for y in np.linspace(y0, y1, scan + 2)[1:-1]:
            q = (float(x), float(y))
            if edge_margin(K, q) < 2 * TOL_GEOM:
                continue
            disp = math.dist(evaluate(f, host, q), q)
            if best is None or disp > best[0]:
                best = (disp, q)
    if best is None or best[0] <= tol:
        raise NumericallyIdentity("f moves no scanned point of K; it is numerically the identity")
    S = StarPolygon(K, best[1])
    return _trace_curve(S, lambda x: evaluate(f, host, x), 1.0, lambdas, tol, tol_fp, budget)
