"""Figures for the boundary handling study: rank heatmaps and ECDF curves.

This package reads only the CSV files written by the study runner's analyze
and ecdf commands; it shares no code with the runner, so the file layout is
the whole contract.
"""

from modde_plots.io import SchemaError, read_ecdf, read_marks, read_ranks
from modde_plots.figures import FigureSpec, render_ecdf, render_heatmap

__all__ = [
    "FigureSpec",
    "SchemaError",
    "read_ecdf",
    "read_marks",
    "read_ranks",
    "render_ecdf",
    "render_heatmap",
]
