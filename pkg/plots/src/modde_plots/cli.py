"""Command line entry points: plot-heatmaps and plot-ecdf."""

import argparse
import re
import sys
from pathlib import Path

from modde_plots.figures import FigureSpec, render_ecdf, render_heatmap
from modde_plots.io import SchemaError

HEATMAP_FILES = ("ranks_group*.csv", re.compile(r"ranks_group(\d+)\.csv"))
ECDF_FILES = (
    "ecdf_group*.csv",
    re.compile(r"ecdf_group(\d+)_[^_]+_[^_]+\.csv"),
)


def _discover_groups(indir: Path, glob_pattern: str, regex) -> list[int]:
    groups = set()
    for path in indir.glob(glob_pattern):
        match = regex.fullmatch(path.name)
        if match:
            groups.add(int(match.group(1)))
    return sorted(groups)


def _run(render, files, what: str, argv) -> int:
    ap = argparse.ArgumentParser(description=f"render {what} from study CSVs")
    ap.add_argument("--indir", required=True, type=Path)
    ap.add_argument("--outdir", type=Path, default=None)
    ap.add_argument("--group", default="all")
    args = ap.parse_args(argv)
    outdir = args.outdir if args.outdir is not None else args.indir
    glob_pattern, regex = files

    if args.group == "all":
        groups = _discover_groups(args.indir, glob_pattern, regex)
        if not groups:
            print(
                f"error: no {glob_pattern} files in {args.indir}",
                file=sys.stderr,
            )
            return 2
    else:
        try:
            groups = [int(args.group)]
        except ValueError:
            print("error: --group must be 'all' or an integer", file=sys.stderr)
            return 2

    try:
        for group in groups:
            for path in render(FigureSpec(args.indir, outdir, group)):
                print(path)
    except SchemaError as err:
        print(f"schema error: {err}", file=sys.stderr)
        return 2
    return 0


def run_heatmaps(argv=None) -> int:
    return _run(render_heatmap, HEATMAP_FILES, "rank heatmaps", argv)


def run_ecdf(argv=None) -> int:
    return _run(render_ecdf, ECDF_FILES, "ECDF curves", argv)


def heatmaps_main() -> None:
    sys.exit(run_heatmaps(sys.argv[1:]))


def ecdf_main() -> None:
    sys.exit(run_ecdf(sys.argv[1:]))
