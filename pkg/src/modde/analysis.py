"""Rank-based comparison of boundary handling methods, and ECDF curves.

For one (mutation, crossover) cell, the BCHMs are ranked within each block
(a benchmark function of the group) by the median final value over runs,
with midranks on ties. A Friedman test on the mean ranks decides whether the
BCHMs differ at all; if so, a Hochberg step-up over the best-versus-rest
two-sided normal p-values marks the methods that are significantly worse
than the best-ranked one. The best-ranked set is reported regardless of
significance.

ECDF curves aggregate, over runs and fixed precision targets, the fraction
of (run, target) pairs that reached f_opt + target, as a function of
evaluations divided by the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy import stats

from .bchm import BCHM_TAGS

# Benchmark functions by landscape group: separable, low/moderate
# conditioning, high conditioning, regular multimodal, irregular multimodal.
GROUP_FUNCTIONS = {
    1: ("sphere", "linear-slope"),
    2: ("rosenbrock",),
    3: ("ellipsoid-rot",),
    4: ("rastrigin",),
    5: ("random-peaks",),
}

TARGET_EXPONENTS = tuple(range(1, -9, -1))


@dataclass(frozen=True)
class RankTable:
    """Mean ranks of BCHMs for one (mutation, crossover, group) cell."""

    cell: tuple
    ranks: dict[str, float]
    blocks: int
    significance: frozenset[tuple[str, str]]
    best_set: frozenset[str]
    worse_set: frozenset[str]


def _bchm_order(tag):
    return BCHM_TAGS.index(tag) if tag in BCHM_TAGS else len(BCHM_TAGS)


def compute_ranks(
    records: Iterable,
    functions: Sequence[str] | None = None,
    cell: tuple = (),
) -> RankTable:
    """Mean rank per BCHM over per-function blocks of median final values.

    ``records`` need fields bchm, function, and final_best. Run counts must
    be equal across BCHMs within each function; a missing (bchm, function)
    combination is reported as a gap.
    """
    data: dict[str, dict[str, list[float]]] = {}
    seen_functions = set()
    for r in records:
        data.setdefault(r.bchm, {}).setdefault(r.function, []).append(r.final_best)
        seen_functions.add(r.function)
    bchms = sorted(data, key=_bchm_order)
    if len(bchms) < 2:
        raise ValueError("ranking needs at least 2 boundary handling methods")
    blocks = tuple(functions) if functions else tuple(sorted(seen_functions))
    if not blocks:
        raise ValueError("ranking needs at least 1 function block")
    for fn in blocks:
        counts = set()
        for b in bchms:
            if fn not in data[b]:
                raise ValueError(f"missing runs for bchm={b!r} function={fn!r}")
            counts.add(len(data[b][fn]))
        if len(counts) != 1:
            raise ValueError(f"unequal run counts across BCHMs for function={fn!r}")

    per_block = np.array(
        [
            stats.rankdata([np.median(data[b][fn]) for b in bchms], method="average")
            for fn in blocks
        ]
    )
    mean_ranks = per_block.mean(axis=0)
    ranks = {b: float(rk) for b, rk in zip(bchms, mean_ranks)}
    lowest = min(ranks.values())
    best = frozenset(b for b, rk in ranks.items() if rk == lowest)
    return RankTable(
        cell=cell,
        ranks=ranks,
        blocks=len(blocks),
        significance=frozenset(),
        best_set=best,
        worse_set=frozenset(),
    )


def friedman_test(table: RankTable) -> tuple[float, float]:
    """Friedman chi-square from mean ranks; p from the chi-square tail."""
    k = len(table.ranks)
    n_blocks = table.blocks
    if k < 2 or n_blocks < 2:
        raise ValueError("Friedman test needs at least 2 treatments and 2 blocks")
    mean_ranks = np.array(list(table.ranks.values()))
    stat = (
        12.0
        * n_blocks
        / (k * (k + 1))
        * (np.sum(mean_ranks**2) - k * (k + 1) ** 2 / 4.0)
    )
    stat = max(float(stat), 0.0)
    return stat, float(stats.chi2.sf(stat, k - 1))


def hochberg_posthoc(
    table: RankTable, alpha: float = 0.05
) -> tuple[frozenset[str], frozenset[str], frozenset[tuple[str, str]]]:
    """Best-versus-rest comparisons gated by the Friedman test.

    Returns (best_set, worse_set, pairs). The best set is always the lowest
    mean rank with ties included; the worse set is empty unless the Friedman
    p-value clears alpha, in which case Hochberg's step-up runs over the
    k - 1 two-sided normal p-values against the best-ranked method.
    """
    ranks = table.ranks
    k = len(ranks)
    lowest = min(ranks.values())
    best = frozenset(b for b, rk in ranks.items() if rk == lowest)
    _, p_friedman = friedman_test(table)
    if p_friedman > alpha:
        return best, frozenset(), frozenset()
    anchor = min(best, key=_bchm_order)
    se = np.sqrt(k * (k + 1) / (6.0 * table.blocks))
    comparisons = sorted(
        (2.0 * float(stats.norm.sf(abs(ranks[b] - lowest) / se)), b)
        for b in ranks
        if b != anchor
    )
    m = len(comparisons)
    reject_upto = 0
    for i in range(m, 0, -1):
        if comparisons[i - 1][0] <= alpha / (m - i + 1):
            reject_upto = i
            break
    worse = frozenset(b for _, b in comparisons[:reject_upto])
    pairs = frozenset((anchor, b) for b in worse)
    return best, worse, pairs


def analyze_cell(
    records: Iterable,
    functions: Sequence[str],
    cell: tuple,
    alpha: float = 0.05,
) -> RankTable:
    """Rank table with significance sets filled in where defined.

    Groups holding a single function cannot support the Friedman test; their
    tables keep an empty worse set.
    """
    table = compute_ranks(records, functions, cell)
    if table.blocks >= 2:
        best, worse, pairs = hochberg_posthoc(table, alpha)
    else:
        best, worse, pairs = table.best_set, frozenset(), frozenset()
    return replace(table, best_set=best, worse_set=worse, significance=pairs)


def best_bchm_counts(tables: Iterable[RankTable]) -> dict[str, dict]:
    """How often each BCHM appears in a best set, per group; ties count all."""
    counts: dict[str, dict] = {}
    for table in tables:
        group = table.cell[2] if len(table.cell) > 2 else None
        for b in table.best_set:
            per_group = counts.setdefault(b, {})
            per_group[group] = per_group.get(group, 0) + 1
    return counts


class EcdfInput(NamedTuple):
    """Minimum data needed per run: improvement trajectory, f_opt, dimension."""

    trajectory: Sequence[tuple[int, float]]
    f_opt: float
    n: int


@dataclass(frozen=True)
class EcdfCurve:
    points: tuple[tuple[float, float], ...]
    targets: tuple[float, ...]

    @property
    def final_proportion(self) -> float:
        return self.points[-1][1] if self.points else 0.0


def compute_ecdf(logs: Iterable, targets: Sequence[float] | None = None) -> EcdfCurve:
    """Fraction of (run, target) pairs solved, versus evaluations / n.

    A pair counts as solved at the first trajectory point whose best value
    is at or below f_opt + target.
    """
    if targets is None:
        targets = tuple(10.0**e for e in TARGET_EXPONENTS)
    targets = tuple(float(t) for t in targets)
    hit_x: list[float] = []
    total = 0
    for log in logs:
        for tgt in targets:
            total += 1
            level = log.f_opt + tgt
            for evals, best in log.trajectory:
                if best <= level:
                    hit_x.append(evals / log.n)
                    break
    if total == 0:
        raise ValueError("ECDF needs at least one run and one target")
    points: list[tuple[float, float]] = []
    for i, x in enumerate(sorted(hit_x), start=1):
        frac = i / total
        if points and points[-1][0] == x:
            points[-1] = (x, frac)
        else:
            points.append((x, frac))
    return EcdfCurve(tuple(points), targets)
