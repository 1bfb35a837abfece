# app/utilities/helpers/heatmap_svg.py
from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from loguru import logger  # noqa: E402
from matplotlib import colors as mcolors  # noqa: E402
from matplotlib.cm import ScalarMappable  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from app.config.setting import settings  # noqa: E402
from app.models.experiments import SweepGrid  # noqa: E402


AXIS_LABELS = {
    "alpha": r"$\alpha$",
    "beta": r"$\beta$",
    "gamma": r"$\gamma$",
    "lambda": r"$\lambda$",
    "n": "N",
    "d": "d",
}


def color_range(grid: SweepGrid, value_range: Optional[tuple[float, float]] = None) -> tuple[float, float]:
    """Ramp endpoints in log10(phi); the grid's own extremes unless fixed"""
    if value_range is not None:
        return float(value_range[0]), float(value_range[1])
    values = grid.log10_matrix()
    return float(values.min()), float(values.max())


def cell_colors(grid: SweepGrid, value_range: Optional[tuple[float, float]] = None) -> List[List[str]]:
    """Hex fill of every cell, linear in log10(phi) between the ramp endpoints"""
    lo, hi = color_range(grid, value_range)
    cmap = matplotlib.colormaps[settings.SVG_COLORMAP]
    values = grid.log10_matrix()
    if hi > lo:
        scaled = np.clip((values - lo) / (hi - lo), 0.0, 1.0)
    else:
        scaled = np.full(values.shape, 0.5)
    return [[mcolors.to_hex(cmap(float(v))) for v in row] for row in scaled]


def _tick_labels(values) -> List[str]:
    return [f"{v:g}" for v in values]


def render_heatmap_svg(grid: SweepGrid, path: str | Path,
                       value_range: Optional[tuple[float, float]] = None) -> Path:
    """
    One rectangle per cell (id cell-<i>-<k>), tick labels on both axes and a
    colour-scale legend in log10(phi)
    """
    if not grid.cells or not grid.cells[0]:
        raise ValueError("cannot render an empty grid")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fills = cell_colors(grid, value_range)
    lo, hi = color_range(grid, value_range)
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    nx, ny = len(grid.x_axis), len(grid.y_axis)

    with plt.rc_context({"svg.hashsalt": "ring-lifetime-flow", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.0, 5.0))
        try:
            for i in range(nx):
                for k in range(ny):
                    ax.add_patch(Rectangle((i, k), 1.0, 1.0, facecolor=fills[i][k], edgecolor="none",
                                           gid=f"cell-{i}-{k}"))
            ax.set_xlim(0, nx)
            ax.set_ylim(0, ny)
            ax.set_xticks(np.arange(nx) + 0.5)
            ax.set_xticklabels(_tick_labels(grid.x_axis.values))
            ax.set_yticks(np.arange(ny) + 0.5)
            ax.set_yticklabels(_tick_labels(grid.y_axis.values))
            ax.set_xlabel(AXIS_LABELS.get(grid.x_axis.name, grid.x_axis.name))
            ax.set_ylabel(AXIS_LABELS.get(grid.y_axis.name, grid.y_axis.name))
            ax.set_aspect("auto")

            mappable = ScalarMappable(norm=mcolors.Normalize(vmin=lo, vmax=hi),
                                      cmap=matplotlib.colormaps[settings.SVG_COLORMAP])
            colorbar = fig.colorbar(mappable, ax=ax)
            colorbar.set_label(r"$\log_{10}\Phi$")
            colorbar.ax.set_gid("legend")

            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)

    logger.info(f"Wrote {nx}x{ny} heatmap to {path}")
    return path
