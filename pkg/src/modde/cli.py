"""Command line interface.

Subcommands: ``run`` (one operator combination), ``sweep`` (Cartesian grid),
``analyze`` (rank/PORS tables with significance marks), ``ecdf`` (fixed-target
curves), and ``list-ops`` (the operator catalog). Options may come from a
JSON config file via --config; explicit command line flags win. The output
directory defaults to the MODDE_OUTDIR environment variable.

Exit codes: 0 on success, 2 for usage or configuration errors, 1 for
runtime failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import (
    GROUP_FUNCTIONS,
    EcdfInput,
    analyze_cell,
    best_bchm_counts,
    compute_ecdf,
)
from .bchm import BCHM_TAGS
from .core import ConfigurationError
from .crossover import CROSSOVER_TAGS
from .mutation import MUTATION_TAGS
from .problems import BENCHMARK_TAGS, FUNCTION_TAGS, make_instance
from .runner import DEConfig, RunSummary, SweepGrid, run_sweep, write_outputs

_MUTATION_ORDER = {tag: i for i, tag in enumerate(MUTATION_TAGS)}
_BCHM_ORDER = {tag: i for i, tag in enumerate(BCHM_TAGS)}


def _split_tags(value):
    return [v.strip() for v in value.split(",") if v.strip()]


def _parse_functions(value):
    if value is None:
        raise ConfigurationError("no benchmark functions selected")
    if isinstance(value, str):
        names = _split_tags(value)
    else:
        names = list(value)
    if names == ["all"]:
        return list(BENCHMARK_TAGS)
    for name in names:
        if name not in FUNCTION_TAGS:
            raise ConfigurationError(
                f"unknown function tag {name!r}; valid tags: "
                + ", ".join(FUNCTION_TAGS)
            )
    return names


def _add_common_options(parser):
    parser.add_argument("--adaptation", choices=("shade", "fixed"), default=None)
    parser.add_argument("--F", dest="f_fixed", type=float, default=None)
    parser.add_argument("--Cr", dest="cr_fixed", type=float, default=None)
    parser.add_argument("--function", "--functions", dest="functions", default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--M", dest="pop_size", type=int, default=None)
    parser.add_argument("--budget-mult", dest="budget_mult", type=int, default=None)
    parser.add_argument("--runs", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--outdir", default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--config", default=None)


_DEFAULTS = {
    "adaptation": "shade",
    "f_fixed": 0.5,
    "cr_fixed": 0.9,
    "n": 30,
    "pop_size": 100,
    "budget_mult": 10000,
    "runs": 1,
    "seed": 0,
    "workers": 1,
    "grid": None,
    "mutation": None,
    "crossover": None,
    "bchm": None,
    "mutations": None,
    "crossovers": None,
    "bchms": None,
    "functions": None,
    "outdir": None,
}

_CONFIG_KEYS = set(_DEFAULTS)


def _merge_config(args):
    """Fill unset CLI options from the JSON config file, then from defaults."""
    values = vars(args)
    if values.get("config"):
        path = Path(values["config"])
        try:
            loaded = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigurationError(f"config file not found: {path}")
        except json.JSONDecodeError as err:
            raise ConfigurationError(f"config file is not valid JSON: {err}")
        if not isinstance(loaded, dict):
            raise ConfigurationError("config file must hold a JSON object")
        for key, val in loaded.items():
            key = key.replace("-", "_").replace("budget_multiplier", "budget_mult")
            if key == "F":
                key = "f_fixed"
            elif key == "Cr":
                key = "cr_fixed"
            elif key == "M":
                key = "pop_size"
            if key not in _CONFIG_KEYS:
                raise ConfigurationError(f"unknown config key {key!r}")
            if values.get(key) is None:
                values[key] = val
    for key, default in _DEFAULTS.items():
        if values.get(key) is None:
            values[key] = default
    if values["outdir"] is None:
        values["outdir"] = os.environ.get("MODDE_OUTDIR")
    if values["outdir"] is None:
        raise ConfigurationError(
            "no output directory: pass --outdir or set MODDE_OUTDIR"
        )
    return args


def _base_config(args):
    return DEConfig(
        mutation=args.mutation or "rand/1",
        crossover=args.crossover or "bin",
        bchm=args.bchm or "projection",
        adaptation=args.adaptation,
        f_fixed=args.f_fixed,
        cr_fixed=args.cr_fixed,
        pop_size=args.pop_size,
        budget_multiplier=args.budget_mult,
        runs=args.runs,
        master_seed=args.seed,
    )


def _cmd_run(args):
    _merge_config(args)
    for name in ("mutation", "crossover", "bchm"):
        if getattr(args, name) is None:
            raise ConfigurationError(f"run requires --{name}")
    functions = _parse_functions(args.functions)
    grid = SweepGrid((args.mutation,), (args.crossover,), (args.bchm,))
    logs = run_sweep(grid, functions, _base_config(args), args.n, args.workers)
    write_outputs(logs, Path(args.outdir), args.n)
    print(f"wrote {len(logs)} runs to {args.outdir}")
    return 0


def _cmd_sweep(args):
    _merge_config(args)
    if args.grid == "full":
        grid = SweepGrid.full()
    else:
        if not (args.mutations and args.crossovers and args.bchms):
            raise ConfigurationError(
                "sweep needs --grid full or all of --mutations/--crossovers/--bchms"
            )
        as_list = lambda v: tuple(_split_tags(v) if isinstance(v, str) else v)
        grid = SweepGrid(
            as_list(args.mutations), as_list(args.crossovers), as_list(args.bchms)
        )
    functions = _parse_functions(args.functions)
    logs = run_sweep(grid, functions, _base_config(args), args.n, args.workers)
    write_outputs(logs, Path(args.outdir), args.n)
    print(f"wrote {len(logs)} runs to {args.outdir}")
    return 0


def _load_manifest(indir):
    path = Path(indir) / "manifest.json"
    if not path.exists():
        raise ConfigurationError(f"no manifest.json under {indir}")
    manifest = json.loads(path.read_text())
    summaries = [RunSummary(**s) for s in manifest["summaries"]]
    return manifest, summaries


def _groups_arg(value):
    if value == "all":
        return sorted(GROUP_FUNCTIONS)
    try:
        group = int(value)
    except ValueError:
        group = -1
    if group not in GROUP_FUNCTIONS:
        raise ConfigurationError(
            f"unknown group {value!r}; valid: 1-{max(GROUP_FUNCTIONS)} or 'all'"
        )
    return [group]


def _cells(summaries):
    pairs = {(s.mutation, s.crossover) for s in summaries}
    return sorted(pairs, key=lambda p: (_MUTATION_ORDER[p[0]], p[1]))


def _cell_label(mutation, crossover):
    return f"{mutation}|{crossover}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def _analyze_group(summaries, group, alpha):
    functions = [
        fn
        for fn in GROUP_FUNCTIONS[group]
        if any(s.function == fn for s in summaries)
    ]
    if not functions:
        raise ConfigurationError(
            f"no runs found for group {group} functions {GROUP_FUNCTIONS[group]}"
        )
    group_runs = [s for s in summaries if s.function in functions]
    tables = []
    for mutation, cross in _cells(group_runs):
        records = [
            s for s in group_runs if (s.mutation, s.crossover) == (mutation, cross)
        ]
        tables.append(
            analyze_cell(records, functions, (mutation, cross, group), alpha)
        )
    return functions, group_runs, tables


def _write_group_tables(outdir, group, group_runs, tables):
    cells = [(t.cell[0], t.cell[1]) for t in tables]
    bchms = sorted({s.bchm for s in group_runs}, key=lambda b: _BCHM_ORDER[b])
    header = ["bchm"] + [_cell_label(m, c) for m, c in cells]

    rank_rows = [
        [b] + [repr(t.ranks[b]) for t in tables] for b in bchms
    ]
    _write_csv(Path(outdir) / f"ranks_group{group}.csv", header, rank_rows)

    pors_rows = []
    for b in bchms:
        row = [b]
        for m, c in cells:
            vals = [
                s.pors
                for s in group_runs
                if (s.mutation, s.crossover, s.bchm) == (m, c, b)
                and s.pors is not None
            ]
            row.append(repr(sum(vals) / len(vals)) if vals else "")
        pors_rows.append(row)
    _write_csv(Path(outdir) / f"pors_group{group}.csv", header, pors_rows)

    mark_rows = []
    for t in tables:
        mutation, cross = t.cell[0], t.cell[1]
        for b in sorted(t.best_set, key=lambda b: _BCHM_ORDER[b]):
            mark_rows.append([mutation, cross, b, "best"])
        for b in sorted(t.worse_set, key=lambda b: _BCHM_ORDER[b]):
            mark_rows.append([mutation, cross, b, "worse"])
    _write_csv(
        Path(outdir) / f"marks_group{group}.csv",
        ["mutation", "crossover", "bchm", "mark"],
        mark_rows,
    )


def _covered_groups(groups, summaries, explicit):
    """Drop groups with no runs when sweeping 'all'; error when asked by name."""
    present = {s.function for s in summaries}
    covered = [
        g for g in groups if any(fn in present for fn in GROUP_FUNCTIONS[g])
    ]
    if explicit and covered != groups:
        missing = [g for g in groups if g not in covered]
        raise ConfigurationError(
            f"no runs found for group {missing[0]} functions "
            f"{GROUP_FUNCTIONS[missing[0]]}"
        )
    if not covered:
        raise ConfigurationError("no runs match any analysis group")
    return covered


def _cmd_analyze(args):
    outdir = args.outdir or args.indir
    _, summaries = _load_manifest(args.indir)
    groups = _groups_arg(args.group)
    groups = _covered_groups(groups, summaries, explicit=args.group != "all")
    all_tables = []
    for group in groups:
        _, group_runs, tables = _analyze_group(summaries, group, args.alpha)
        _write_group_tables(outdir, group, group_runs, tables)
        all_tables.extend(tables)
    if len(groups) > 1:
        counts = best_bchm_counts(all_tables)
        bchms = sorted(counts, key=lambda b: _BCHM_ORDER[b])
        header = ["bchm"] + [f"group{g}" for g in groups] + ["total"]
        rows = []
        for b in bchms:
            per_group = [counts[b].get(g, 0) for g in groups]
            rows.append([b] + per_group + [sum(per_group)])
        _write_csv(Path(outdir) / "counts.csv", header, rows)
    print(f"analyzed groups {groups} into {outdir}")
    return 0


def _read_trajectory(path):
    lines = path.read_text().strip().splitlines()
    out = []
    for line in lines[1:]:
        evals, best = line.split(",")
        out.append((int(evals), float(best)))
    return out


def _cmd_ecdf(args):
    outdir = args.outdir or args.indir
    manifest, summaries = _load_manifest(args.indir)
    groups = _groups_arg(args.group)
    groups = _covered_groups(groups, summaries, explicit=args.group != "all")
    n = manifest["n"]
    master_seed = manifest["master_seed"]
    f_opts = {
        fn: make_instance(fn, n, master_seed).f_opt
        for fn in manifest["functions"]
        if fn in BENCHMARK_TAGS
    }
    written = 0
    for group in groups:
        functions, group_runs, tables = _analyze_group(summaries, group, args.alpha)
        for table in tables:
            mutation, cross = table.cell[0], table.cell[1]
            best = min(table.best_set, key=lambda b: _BCHM_ORDER[b])
            inputs = []
            for s in group_runs:
                if (s.mutation, s.crossover, s.bchm) != (mutation, cross, best):
                    continue
                csv = (
                    Path(args.indir)
                    / s.config_id
                    / s.function
                    / f"run{s.run}.csv"
                )
                inputs.append(
                    EcdfInput(_read_trajectory(csv), f_opts[s.function], s.n)
                )
            curve = compute_ecdf(inputs)
            name = f"ecdf_group{group}_{mutation.replace('/', '')}_{cross}.csv"
            _write_csv(
                Path(outdir) / name,
                ["evals_over_n", "proportion"],
                [[repr(x), repr(p)] for x, p in curve.points],
            )
            written += 1
    print(f"wrote {written} ECDF curves to {outdir}")
    return 0


def _cmd_list_ops(args):
    print(f"mutation strategies ({len(MUTATION_TAGS)}):")
    for tag in MUTATION_TAGS:
        print(f"  {tag}")
    print(f"crossover kinds ({len(CROSSOVER_TAGS)}):")
    for tag in CROSSOVER_TAGS:
        print(f"  {tag}")
    print(f"boundary handling methods ({len(BCHM_TAGS)}):")
    for tag in BCHM_TAGS:
        print(f"  {tag}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="modde",
        description="Modular DE benchmark driver with configurable "
        "boundary constraint handling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one operator combination")
    p_run.add_argument("--mutation", default=None)
    p_run.add_argument("--crossover", default=None)
    p_run.add_argument("--bchm", default=None)
    _add_common_options(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a Cartesian operator grid")
    p_sweep.add_argument("--grid", choices=("full",), default=None)
    p_sweep.add_argument("--mutations", default=None)
    p_sweep.add_argument("--crossovers", default=None)
    p_sweep.add_argument("--bchms", default=None)
    _add_common_options(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_analyze = sub.add_parser("analyze", help="rank tables and marks from a sweep")
    p_analyze.add_argument("--indir", required=True)
    p_analyze.add_argument("--outdir", default=None)
    p_analyze.add_argument("--group", default="all")
    p_analyze.add_argument("--alpha", type=float, default=0.05)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_ecdf = sub.add_parser("ecdf", help="fixed-target ECDF curves from a sweep")
    p_ecdf.add_argument("--indir", required=True)
    p_ecdf.add_argument("--outdir", default=None)
    p_ecdf.add_argument("--group", default="all")
    p_ecdf.add_argument("--alpha", type=float, default=0.05)
    p_ecdf.set_defaults(func=_cmd_ecdf)

    p_list = sub.add_parser("list-ops", help="list the operator catalog")
    p_list.set_defaults(func=_cmd_list_ops)
    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except ConfigurationError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - CLI boundary
        print(f"error: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
