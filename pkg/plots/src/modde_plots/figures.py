"""Figure builders: pure functions from parsed tables to matplotlib figures.

Rendering is deterministic end to end — fixed style, fixed SVG hash salt, no
timestamps in the output metadata — so re-rendering unchanged CSVs yields
byte-identical image files.
"""

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "modde-plots"

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap

from modde_plots.io import RankGrid, SchemaError, read_ecdf, read_marks, read_ranks

BEST_COLOR = "#1a7f37"
WORSE_COLOR = "#b42318"
PLAIN_COLOR = "#000000"
# These two methods change feasible candidates too (one transforms, one
# penalizes), so their rank rows are flagged in the axis labels.
STARRED_METHODS = ("transformation", "death-penalty")


@dataclass(frozen=True)
class FigureSpec:
    """Where to read CSVs from, where to write images, and which group."""

    indir: Path
    outdir: Path
    group: int
    formats: tuple[str, ...] = ("png", "svg")


def save_deterministic(fig, stem: Path, formats=("png", "svg")) -> list[Path]:
    """Write one file per format next to ``stem``, without volatile metadata."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        path = stem.with_suffix(f".{fmt}")
        metadata = {"Date": None} if fmt == "svg" else {"Software": None}
        fig.savefig(path, format=fmt, metadata=metadata, dpi=150)
        written.append(path)
    return written


def build_heatmap(grid: RankGrid, marks, title: str):
    """Annotated method-by-cell heatmap; annotation color encodes the marks."""
    nrows, ncols = grid.values.shape
    vmin, vmax = float(grid.values.min()), float(grid.values.max())
    if vmin == vmax:  # all-equal table: render a uniform mid shade
        vmin, vmax = vmin - 0.5, vmax + 0.5
    # light slice of Greys so annotations stay readable on every cell
    shade = ListedColormap(plt.get_cmap("Greys")(np.linspace(0.04, 0.50, 256)))

    fig, ax = plt.subplots(
        figsize=(1.8 + 0.52 * ncols, 1.4 + 0.40 * nrows), layout="constrained"
    )
    ax.imshow(
        grid.values, cmap=shade, vmin=vmin, vmax=vmax,
        aspect="auto", interpolation="nearest",
    )
    ax.set_xticks(np.arange(ncols))
    ax.set_xticklabels(
        [f"{m}|{c}" for m, c in grid.cells], rotation=90, fontsize=7
    )
    ax.set_yticks(np.arange(nrows))
    ax.set_yticklabels(
        [b + "*" if b in STARRED_METHODS else b for b in grid.bchms],
        fontsize=8,
    )
    note = dict(ha="center", va="center", fontsize=6 if ncols > 8 else 9)
    for r, bchm in enumerate(grid.bchms):
        for c, (mutation, cross) in enumerate(grid.cells):
            mark = marks.get((mutation, cross, bchm))
            color = {"best": BEST_COLOR, "worse": WORSE_COLOR}.get(
                mark, PLAIN_COLOR
            )
            ax.text(c, r, f"{grid.values[r, c]:.2f}", color=color, **note)
    ax.set_title(title, fontsize=10)
    return fig


def build_ecdf(curves: dict, title: str):
    """Fixed-target ECDF plot: color per mutation, line style per crossover."""
    mutations = sorted({m for m, _ in curves})
    palette = plt.get_cmap("tab20")
    color = {m: palette(i % 20) for i, m in enumerate(mutations)}
    style = {"bin": "-", "exp": "--"}

    fig, ax = plt.subplots(figsize=(10.0, 5.5))
    fig.subplots_adjust(left=0.08, right=0.70, top=0.92, bottom=0.11)
    for (mutation, cross), points in sorted(curves.items()):
        ax.plot(
            points[:, 0], points[:, 1],
            drawstyle="steps-post",
            linestyle=style.get(cross, ":"),
            color=color[mutation],
            linewidth=1.1,
            label=f"{mutation}|{cross}",
        )
    ax.set_xscale("log")
    ax.set_ylim(0.0, 1.02)
    ax.set_xlabel("evaluations / n")
    ax.set_ylabel("proportion of (run, target) pairs")
    ax.grid(True, which="both", alpha=0.25, linewidth=0.4)
    ax.legend(
        loc="upper left", bbox_to_anchor=(1.02, 1.0),
        fontsize=6, frameon=False, ncols=1 + len(curves) // 24,
    )
    ax.set_title(title, fontsize=10)
    return fig


def _check_marks_against_grid(grid: RankGrid, marks, path: Path) -> None:
    cells = set(grid.cells)
    bchms = set(grid.bchms)
    for mutation, cross, bchm in marks:
        if (mutation, cross) not in cells:
            raise SchemaError(
                f"{path}: mark references cell {mutation}|{cross}, "
                "which is not a ranks column"
            )
        if bchm not in bchms:
            raise SchemaError(
                f"{path}: mark references method {bchm!r}, "
                "which is not a ranks row"
            )


def render_heatmap(spec: FigureSpec) -> list[Path]:
    """Render one group's annotated rank heatmap to PNG and SVG."""
    ranks_path = Path(spec.indir) / f"ranks_group{spec.group}.csv"
    marks_path = Path(spec.indir) / f"marks_group{spec.group}.csv"
    grid = read_ranks(ranks_path)
    marks = read_marks(marks_path)
    _check_marks_against_grid(grid, marks, marks_path)
    fig = build_heatmap(grid, marks, f"function group {spec.group}")
    try:
        return save_deterministic(
            fig, Path(spec.outdir) / f"heatmap_group{spec.group}", spec.formats
        )
    finally:
        plt.close(fig)


def render_ecdf(spec: FigureSpec) -> list[Path]:
    """Render one group's ECDF curves (all operator cells) to PNG and SVG."""
    indir = Path(spec.indir)
    curves = {}
    for path in sorted(indir.glob(f"ecdf_group{spec.group}_*.csv")):
        parts = path.stem.split("_")
        if len(parts) != 4:
            raise SchemaError(
                f"{path}: name must be "
                f"ecdf_group{spec.group}_<mutation>_<crossover>.csv"
            )
        curves[(parts[2], parts[3])] = read_ecdf(path)
    if not curves:
        raise SchemaError(
            f"{indir}: no ecdf_group{spec.group}_*.csv curves found"
        )
    fig = build_ecdf(curves, f"function group {spec.group}")
    try:
        return save_deterministic(
            fig, Path(spec.outdir) / f"ecdf_group{spec.group}", spec.formats
        )
    finally:
        plt.close(fig)
