"""Static SVG figures of sets, kernels, shrunken hulls and eigencurves."""

from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

RC = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 7,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.0,
    "svg.hashsalt": "starindex",
    "svg.fonttype": "none",
}


def new_figure(width: float = 4.5):
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(width, width))
        ax.set_aspect("equal")
        ax.grid(True, lw=0.3, alpha=0.5)
    return fig, ax


def draw_polygon(ax, vertices, label=None, fill=None, edge="k", ls="-", alpha=0.25, lw=1.0):
    patch = PolygonPatch(list(vertices), closed=True, facecolor=fill or "none", edgecolor=edge,
                         linestyle=ls, alpha=None if fill is None else alpha, lw=lw, label=label)
    ax.add_patch(patch)
    if fill is not None:
        ax.add_patch(PolygonPatch(list(vertices), closed=True, facecolor="none", edgecolor=edge, linestyle=ls, lw=lw))
    return patch


def _finish(ax, title):
    ax.autoscale_view()
    ax.set_title(title)
    ax.legend(loc="best", framealpha=0.8)


def save(fig, path) -> Path:
    """Write the figure as SVG via a temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".svg")
    os.close(fd)
    try:
        with plt.rc_context(RC):
            fig.savefig(tmp, format="svg", bbox_inches="tight", metadata={"Date": None})
        os.replace(tmp, path)
    finally:
        plt.close(fig)
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def render_kernel(S, K, path):
    fig, ax = new_figure()
    draw_polygon(ax, S.vertices, "S", fill="tab:blue")
    if K.is_star_shaped and len(K.vertices) >= 3:
        draw_polygon(ax, K.vertices, "kernel", fill="tab:red", edge="tab:red")
    elif K.is_star_shaped:
        xs, ys = zip(*K.vertices)
        ax.plot(xs, ys, "o-", color="tab:red", label="kernel (degenerate)")
    _finish(ax, "star kernel" if K.is_star_shaped else "not star-shaped")
    return save(fig, path)


def render_index(S, hull, report, path):
    p = report.p
    fig, ax = new_figure()
    draw_polygon(ax, hull.vertices, "co(S)", edge="0.4", ls="--")
    draw_polygon(ax, S.vertices, "S", fill="tab:blue")
    shrunk = [(p[0] + report.alpha_p * (x - p[0]), p[1] + report.alpha_p * (y - p[1])) for x, y in hull.vertices]
    draw_polygon(ax, shrunk, r"$p+\alpha_p(\mathrm{co}(S)-p)$", fill="tab:orange", edge="tab:orange")
    x0, y0, x1, y1 = hull.bbox
    reach = math.hypot(x1 - x0, y1 - y0)
    t = report.witness_angle
    ax.plot([p[0], p[0] + reach * math.cos(t)], [p[1], p[1] + reach * math.sin(t)], ":", color="tab:red",
            label="witness ray")
    ax.plot(*p, "k+", ms=8, label="p")
    ax.set_xlim(x0 - 0.05 * reach, x1 + 0.05 * reach)
    ax.set_ylim(y0 - 0.05 * reach, y1 + 0.05 * reach)
    ax.set_title(rf"$\alpha_p = {report.alpha_p:.6g}$")
    ax.legend(loc="best", framealpha=0.8)
    return save(fig, path)


def render_densify(S, result, hull, path):
    p, t = result.p, result.t_used
    fig, ax = new_figure()
    draw_polygon(ax, result.s_prime.vertices, "S'", fill="tab:green", edge="tab:green")
    draw_polygon(ax, S.vertices, "S", edge="k")
    shrunk = [(p[0] + t * (x - p[0]), p[1] + t * (y - p[1])) for x, y in hull.vertices]
    draw_polygon(ax, shrunk, "p + t(co(S)-p)", edge="tab:red", ls="--")
    ax.plot(*p, "k+", ms=8)
    _finish(ax, f"densify: t = {t:.4g}")
    return save(fig, path)


def render_eigencurve(S, hull, curve, path, verdict=None):
    p, a = curve.p, curve.alpha_p
    fig, ax = new_figure()
    draw_polygon(ax, S.vertices, "S", fill="tab:blue")
    shrunk = [(p[0] + a * (x - p[0]), p[1] + a * (y - p[1])) for x, y in hull.vertices]
    draw_polygon(ax, shrunk, r"$p+\alpha_p(C-p)$", edge="tab:orange", ls="--")
    if curve.samples:
        xs = [s.x[0] for s in curve.samples]
        ys = [s.x[1] for s in curve.samples]
        lam = [s.lam for s in curve.samples]
        ax.plot(xs, ys, "-", color="0.5", lw=0.6)
        sc = ax.scatter(xs, ys, c=lam, cmap="viridis", s=14, zorder=3, label=r"$x_\lambda$")
        fig.colorbar(sc, ax=ax, shrink=0.7, label=r"$\lambda$")
    ax.plot(*p, "k+", ms=8, label="p")
    _finish(ax, f"eigencurve ({verdict})" if verdict else "eigencurve")
    return save(fig, path)
