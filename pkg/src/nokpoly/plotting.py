"""SVG figures of polygons with Lambda, the diagonal and the bounding triangles."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Polygon as Patch

from .exactnum import to_decimal
from .polygon import NOKPolygon

__all__ = ["plot_polygon"]


def _f(x) -> float:
    return float(to_decimal(x, 30))


def plot_polygon(
    poly: NOKPolygon,
    out,
    *,
    show_lambda: bool = True,
    triangles: Sequence[Sequence[tuple]] = (),
    title: str = "",
) -> Path:
    """Write the polygon to ``out`` as SVG; the file is byte-identical for identical input."""
    out = Path(out)
    pts = [(_f(x), _f(y)) for x, y in poly.vertices]
    xmax = max([p[0] for p in pts] + [2.5]) * 1.1
    ymax = max([p[1] for p in pts] + [1.0]) * 1.15

    with matplotlib.rc_context({"svg.hashsalt": "nokpoly", "svg.fonttype": "none"}):
        fig = Figure(figsize=(6, 4))
        ax = fig.add_subplot()
        if show_lambda:
            lam = [(2, 0), (xmax, 0), (xmax, xmax / 2), (2, 1)]
            ax.add_patch(Patch(lam, closed=True, facecolor="#f2c14e", alpha=0.35, edgecolor="#c98b00",
                               linestyle="--", label=r"$\Lambda$"))
        for k, tri in enumerate(triangles):
            ax.add_patch(Patch([(_f(x), _f(y)) for x, y in tri], closed=True, fill=False,
                               edgecolor="#7a7a7a", linestyle=":", label="bounding triangle" if k == 0 else None))
        if len(pts) >= 3:
            ax.add_patch(Patch(pts, closed=True, facecolor="#4c78a8", alpha=0.55, edgecolor="#1f3b5c",
                               label="polygon"))
        elif pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], color="#1f3b5c", marker="o", label="polygon")
        d = min(xmax, ymax)
        ax.plot([0, d], [0, d], color="black", linewidth=0.8, linestyle="-.", label="y = t")
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=12, color="#1f3b5c", zorder=3)
        ax.set_xlim(0, xmax)
        ax.set_ylim(0, ymax)
        ax.set_xlabel("t")
        ax.set_ylabel("y")
        ax.set_aspect("equal", adjustable="box")
        if title:
            ax.set_title(title)
        ax.legend(loc="upper left", bbox_to_anchor=(1.02, 1), fontsize="small", frameon=False)
        fig.savefig(out, format="svg", metadata={"Date": None}, bbox_inches="tight")
    return out
