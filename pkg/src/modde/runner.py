"""Benchmark runner: single runs, Cartesian sweeps, and their file formats.

A run follows the classic generational loop: all trials of a generation are
produced from a snapshot of the population, then selection is applied as a
batch. The initial population is evaluated before the first generation and
counts against the budget. When fewer evaluations remain than members, the
final generation is truncated in stable member order and the adaptation
update is skipped for it.

Besides the trajectory of improvements, each run records how many candidate
solutions were repaired or penalized (PORS: proportion of repaired
solutions). The denominator counts donor vectors, except for death-penalty
where the check applies to trial vectors.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import problems
from .adaptation import (
    DEFAULT_MEMORY_SIZE,
    FIXED_CR,
    FIXED_F,
    ParamMemory,
    SuccessRecord,
    sample_parameters,
    update_memory,
)
from .bchm import (
    BCHM_TAGS,
    RepairContext,
    death_penalty_check,
    repair,
    resample_guard,
)
from .core import (
    Budget,
    ConfigurationError,
    Individual,
    PENALTY,
    derive_seed,
    initialize_population,
    make_rng,
    select,
)
from .crossover import crossover, normalize_crossover
from .mutation import MUTATION_TAGS, mutate
from .problems import FUNCTION_TAGS, ProblemInstance, make_instance

ADAPTATION_MODES = ("shade", "fixed")


@dataclass(frozen=True)
class DEConfig:
    mutation: str
    crossover: str
    bchm: str
    adaptation: str = "shade"
    f_fixed: float = FIXED_F
    cr_fixed: float = FIXED_CR
    memory_size: int = DEFAULT_MEMORY_SIZE
    pop_size: int = 100
    budget_multiplier: int = 10000
    runs: int = 1
    master_seed: int = 0

    def validated(self) -> "DEConfig":
        if self.mutation not in MUTATION_TAGS:
            raise ConfigurationError(
                f"unknown mutation strategy {self.mutation!r}; valid tags: "
                + ", ".join(MUTATION_TAGS)
            )
        cfg = replace(self, crossover=normalize_crossover(self.crossover))
        if self.bchm not in BCHM_TAGS:
            raise ConfigurationError(
                f"unknown boundary handling kind {self.bchm!r}; valid tags: "
                + ", ".join(BCHM_TAGS)
            )
        if self.adaptation not in ADAPTATION_MODES:
            raise ConfigurationError(
                f"unknown adaptation mode {self.adaptation!r}; valid: "
                + ", ".join(ADAPTATION_MODES)
            )
        if self.pop_size < 4:
            raise ConfigurationError("population size must be at least 4")
        if self.budget_multiplier < 1:
            raise ConfigurationError("budget multiplier must be at least 1")
        if self.runs < 1:
            raise ConfigurationError("run count must be at least 1")
        if not self.f_fixed > 0.0:
            raise ConfigurationError("fixed F must be positive")
        if not 0.0 <= self.cr_fixed <= 1.0:
            raise ConfigurationError("fixed Cr must lie in [0, 1]")
        if self.memory_size < 1:
            raise ConfigurationError("memory size must be at least 1")
        return cfg

    @property
    def config_id(self) -> str:
        return f"{self.mutation.replace('/', '')}_{self.crossover}_{self.bchm}"


@dataclass(frozen=True)
class RunSummary:
    """Per-run record mirrored one-to-one by the summary JSON files."""

    config_id: str
    mutation: str
    crossover: str
    bchm: str
    function: str
    n: int
    run: int
    seed: int
    final_best: float
    pors: float | None
    evals_used: int


@dataclass
class RunLog:
    config: DEConfig
    function: str
    n: int
    run_index: int
    seed: int
    f_opt: float
    trajectory: list[tuple[int, float]]
    final_best: float
    pors_numerator: int
    pors_denominator: int
    evals_used: int
    wall_time: float = 0.0

    def summary(self) -> RunSummary:
        return RunSummary(
            config_id=self.config.config_id,
            mutation=self.config.mutation,
            crossover=self.config.crossover,
            bchm=self.config.bchm,
            function=self.function,
            n=self.n,
            run=self.run_index,
            seed=self.seed,
            final_best=self.final_best,
            pors=pors(self),
            evals_used=self.evals_used,
        )


def pors(log: RunLog) -> float | None:
    """Proportion of repaired solutions; absent when nothing was generated."""
    if log.pors_denominator == 0:
        return None
    return log.pors_numerator / log.pors_denominator


def run_single(cfg: DEConfig, inst: ProblemInstance, run_index: int) -> RunLog:
    """One independent run; the seed is derived, never passed in."""
    cfg = cfg.validated()
    started = time.perf_counter()
    seed = derive_seed(cfg.master_seed, cfg.config_id, inst.tag, run_index)
    rng = make_rng(seed)
    space = inst.space
    budget = Budget(inst.n * cfg.budget_multiplier)
    shade = cfg.adaptation == "shade"
    death = cfg.bchm == "death-penalty"
    resampling = cfg.bchm == "resampling"

    pop = initialize_population(space, cfg.pop_size, rng)
    trajectory: list[tuple[int, float]] = []
    best = PENALTY
    for i in range(pop.size):
        if budget.exhausted:
            break
        f = problems.evaluate(inst, pop.xs[i], budget, rng)
        pop.fitness[i] = f
        if f < best:
            best = f
            trajectory.append((budget.used_evaluations, f))

    memory = ParamMemory.fresh(cfg.memory_size) if shade else None
    num = den = 0

    while not budget.exhausted:
        trials: list[tuple[int, np.ndarray, float, float, float]] = []
        truncated = False
        for i in range(pop.size):
            if not death and budget.exhausted:
                truncated = True
                break
            if shade:
                f_i, cr_i = sample_parameters(memory, rng)
            else:
                f_i, cr_i = cfg.f_fixed, cfg.cr_fixed

            if resampling:
                outcome, attempts = resample_guard(
                    cfg.mutation, pop, i, f_i, space, rng
                )
                donor = outcome.donor
                den += 1
                num += attempts > 1
            else:
                outcome = mutate(cfg.mutation, pop, i, f_i, rng)
                donor = outcome.donor
                if not death:
                    report = repair(
                        cfg.bchm,
                        RepairContext(donor, outcome.base, pop.xs[i], space, rng),
                    )
                    donor = report.result
                    den += 1
                    num += report.repaired

            trial = crossover(cfg.crossover, pop.xs[i], donor, cr_i, rng)

            if death:
                verdict = death_penalty_check(trial, space)
                if verdict.repaired:
                    den += 1
                    num += 1
                    trial_f = PENALTY  # not evaluated, budget untouched
                else:
                    if budget.exhausted:
                        truncated = True
                        break
                    trial_f = problems.evaluate(inst, trial, budget, rng)
                    den += 1
            else:
                trial_f = problems.evaluate(inst, trial, budget, rng)

            if trial_f < best:
                best = trial_f
                trajectory.append((budget.used_evaluations, trial_f))
            trials.append((i, trial, trial_f, f_i, cr_i))

        successes: list[SuccessRecord] = []
        for i, trial_x, trial_f, f_i, cr_i in trials:
            parent = Individual(pop.xs[i], float(pop.fitness[i]))
            candidate = Individual(trial_x, trial_f)
            if select(parent, candidate) is candidate:
                successes.append(
                    SuccessRecord(f_i, cr_i, float(pop.fitness[i]) - trial_f)
                )
                pop.xs[i] = trial_x
                pop.fitness[i] = trial_f
        pop.generation += 1
        if shade and not truncated:
            memory = update_memory(memory, successes)

    used = budget.used_evaluations
    if used and (not trajectory or trajectory[-1][0] != used):
        trajectory.append((used, best))
    return RunLog(
        config=cfg,
        function=inst.tag,
        n=inst.n,
        run_index=run_index,
        seed=seed,
        f_opt=inst.f_opt,
        trajectory=trajectory,
        final_best=best,
        pors_numerator=num,
        pors_denominator=den,
        evals_used=used,
        wall_time=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class SweepGrid:
    mutations: tuple[str, ...]
    crossovers: tuple[str, ...]
    bchms: tuple[str, ...]

    @classmethod
    def full(cls) -> "SweepGrid":
        return cls(MUTATION_TAGS, ("bin", "exp"), BCHM_TAGS)


def _sweep_task(payload):
    cfg, function, n, run_index = payload
    inst = make_instance(function, n, cfg.master_seed)
    return run_single(cfg, inst, run_index)


def run_sweep(
    grid: SweepGrid,
    functions: Sequence[str],
    base: DEConfig,
    n: int,
    workers: int = 1,
) -> list[RunLog]:
    """Cartesian sweep over grid cells, functions, and run indices.

    Every run is independently seeded from (master_seed, config id, function,
    run index), so results are identical for any worker count and any
    execution order.
    """
    configs = []
    for m, c, b in product(grid.mutations, grid.crossovers, grid.bchms):
        try:
            configs.append(
                replace(base, mutation=m, crossover=c, bchm=b).validated()
            )
        except ConfigurationError as err:
            raise ConfigurationError(f"invalid sweep cell ({m}, {c}, {b}): {err}")
    for fn in functions:
        if fn not in FUNCTION_TAGS:
            raise ConfigurationError(
                f"unknown function tag {fn!r}; valid tags: "
                + ", ".join(FUNCTION_TAGS)
            )
    tasks = [
        (cfg, fn, n, k)
        for cfg in configs
        for fn in functions
        for k in range(base.runs)
    ]
    if workers <= 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_task, tasks, chunksize=1))


def run_dir(outdir: Path, log: RunLog) -> Path:
    return Path(outdir) / log.config.config_id / log.function


def write_run_files(log: RunLog, outdir: Path) -> None:
    """Write run<k>.csv (trajectory) and run<k>.json (summary) for one run."""
    target = run_dir(outdir, log)
    target.mkdir(parents=True, exist_ok=True)
    lines = ["evals,best_f"]
    lines += [f"{evals},{best!r}" for evals, best in log.trajectory]
    (target / f"run{log.run_index}.csv").write_text("\n".join(lines) + "\n")
    (target / f"run{log.run_index}.json").write_text(
        json.dumps(asdict(log.summary()), sort_keys=True, indent=2) + "\n"
    )


def write_outputs(logs: Iterable[RunLog], outdir: Path, n: int) -> Path:
    """Write all per-run files plus a manifest listing every summary."""
    outdir = Path(outdir)
    logs = sorted(logs, key=lambda l: (l.config.config_id, l.function, l.run_index))
    for log in logs:
        write_run_files(log, outdir)
    manifest = {
        "n": n,
        "master_seed": logs[0].config.master_seed if logs else None,
        "budget_multiplier": logs[0].config.budget_multiplier if logs else None,
        "runs": logs[0].config.runs if logs else None,
        "functions": sorted({log.function for log in logs}),
        "configs": sorted({log.config.config_id for log in logs}),
        "summaries": [asdict(log.summary()) for log in logs],
    }
    path = outdir / "manifest.json"
    outdir.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    return path
