"""Mutation strategy catalog.

Every strategy builds a donor vector from members of the current population.
The base vector (the member the scaled differences are added to) is reported
alongside the donor because several boundary handling methods repair relative
to it.

Draw order is part of each strategy's contract so that runs are replayable
from a seed: special picks (pbest, the direction draw of nsde, the scheme
draw of trigonometric) happen in formula order, uniform r-indices are
rejection-sampled one at a time, and roulette picks consume one uniform draw
each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, Population

MUTATION_TAGS = (
    "rand/1",
    "best/1",
    "target-to-best/1",
    "best/2",
    "rand/2",
    "target-to-best/2",
    "target-to-pbest/1",
    "rand/2/dir",
    "nsde",
    "trigonometric",
    "2-opt/1",
    "2-opt/2",
    "proximity-rand/1",
    "ranking-pbest/1",
)

# Number of r-indices each strategy draws (pairwise distinct, never the
# target). Special picks such as pbest are not r-indices.
INDEX_COUNT = {
    "rand/1": 3,
    "best/1": 2,
    "target-to-best/1": 2,
    "best/2": 4,
    "rand/2": 5,
    "target-to-best/2": 4,
    "target-to-pbest/1": 2,
    "rand/2/dir": 4,
    "nsde": 3,
    "trigonometric": 3,
    "2-opt/1": 3,
    "2-opt/2": 5,
    "proximity-rand/1": 3,
    "ranking-pbest/1": 2,
}

_NEEDS_FITNESS = frozenset(
    {
        "best/1",
        "target-to-best/1",
        "best/2",
        "target-to-best/2",
        "target-to-pbest/1",
        "rand/2/dir",
        "trigonometric",
        "2-opt/1",
        "2-opt/2",
        "ranking-pbest/1",
    }
)

# Probability of applying the trigonometric scheme instead of rand/1.
TRIG_PROBABILITY = 0.05


@dataclass(frozen=True)
class MutationOutcome:
    donor: np.ndarray
    base: np.ndarray
    indices_used: tuple[int, ...]


def _distinct_indices(size, count, exclude, rng):
    # Rejection sampling over uniform integers; indices come out in draw order.
    taken = {exclude} if isinstance(exclude, int) else set(exclude)
    out = []
    while len(out) < count:
        c = int(rng.integers(size))
        if c not in taken:
            taken.add(c)
            out.append(c)
    return out


def _roulette_pick(weights, rng):
    # One uniform draw; probability of slot i proportional to weights[i].
    cum = np.cumsum(weights)
    return int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))


def _pbest_pick(pop, rng):
    # Uniform pick among the best ceil(p * M) members, p = max(0.05, 3 / M).
    m = pop.size
    p = max(0.05, 3.0 / m)
    top = max(1, int(np.ceil(p * m)))
    order = np.argsort(pop.fitness, kind="stable")
    return int(order[int(rng.integers(top))])


def _rand_1(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 3, target, rng)
    xs = pop.xs
    base = xs[r[0]]
    donor = base + f_scale * (xs[r[1]] - xs[r[2]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _best_1(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 2, target, rng)
    xs = pop.xs
    base = xs[pop.best_index()]
    donor = base + f_scale * (xs[r[0]] - xs[r[1]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _target_to_best_1(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 2, target, rng)
    xs = pop.xs
    base = xs[target]
    donor = (
        base
        + f_scale * (xs[pop.best_index()] - base)
        + f_scale * (xs[r[0]] - xs[r[1]])
    )
    return MutationOutcome(donor, base.copy(), tuple(r))


def _best_2(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 4, target, rng)
    xs = pop.xs
    base = xs[pop.best_index()]
    donor = base + f_scale * (xs[r[0]] - xs[r[1]]) + f_scale * (xs[r[2]] - xs[r[3]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _rand_2(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 5, target, rng)
    xs = pop.xs
    base = xs[r[0]]
    donor = base + f_scale * (xs[r[1]] - xs[r[2]]) + f_scale * (xs[r[3]] - xs[r[4]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _target_to_best_2(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 4, target, rng)
    xs = pop.xs
    base = xs[target]
    donor = (
        base
        + f_scale * (xs[pop.best_index()] - base)
        + f_scale * (xs[r[0]] - xs[r[1]])
        + f_scale * (xs[r[2]] - xs[r[3]])
    )
    return MutationOutcome(donor, base.copy(), tuple(r))


def _target_to_pbest_1(pop, target, f_scale, rng):
    pbest = _pbest_pick(pop, rng)
    r = _distinct_indices(pop.size, 2, target, rng)
    xs = pop.xs
    base = xs[target]
    donor = base + f_scale * (xs[pbest] - base) + f_scale * (xs[r[0]] - xs[r[1]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _rand_2_dir(pop, target, f_scale, rng):
    # Each difference pair is ordered so the fitter member leads; the fitter
    # member of the first pair is also the base.
    r = _distinct_indices(pop.size, 4, target, rng)
    f = pop.fitness
    if f[r[0]] > f[r[1]]:
        r[0], r[1] = r[1], r[0]
    if f[r[2]] > f[r[3]]:
        r[2], r[3] = r[3], r[2]
    xs = pop.xs
    base = xs[r[0]]
    donor = base + (f_scale / 2.0) * (xs[r[0]] - xs[r[1]] + xs[r[2]] - xs[r[3]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _nsde(pop, target, f_scale, rng):
    # The scale factor is one scalar per donor: Gaussian(0.5, 0.5) with
    # probability one half, standard Cauchy otherwise. f_scale is unused.
    r = _distinct_indices(pop.size, 3, target, rng)
    if rng.random() < 0.5:
        s = rng.normal(0.5, 0.5)
    else:
        s = rng.standard_cauchy()
    xs = pop.xs
    base = xs[r[0]]
    donor = base + (xs[r[1]] - xs[r[2]]) * s
    return MutationOutcome(donor, base.copy(), tuple(r))


def _trigonometric(pop, target, f_scale, rng):
    # Applied with probability TRIG_PROBABILITY when the absolute fitness
    # values carry weight; falls back to rand/1 on the same indices.
    r = _distinct_indices(pop.size, 3, target, rng)
    xs = pop.xs
    if rng.random() < TRIG_PROBABILITY:
        f = pop.fitness
        a = np.abs([f[r[0]], f[r[1]], f[r[2]]])
        total = a.sum()
        if total > 0.0:
            p = a / total
            x0, x1, x2 = xs[r[0]], xs[r[1]], xs[r[2]]
            base = (x0 + x1 + x2) / 3.0
            donor = (
                base
                + (p[1] - p[0]) * (x0 - x1)
                + (p[2] - p[1]) * (x1 - x2)
                + (p[0] - p[2]) * (x2 - x0)
            )
            return MutationOutcome(donor, base.copy(), tuple(r))
    base = xs[r[0]]
    donor = base + f_scale * (xs[r[1]] - xs[r[2]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _two_opt_1(pop, target, f_scale, rng):
    # The fitter of the first two picks leads the difference and is the base.
    r = _distinct_indices(pop.size, 3, target, rng)
    f = pop.fitness
    lead, trail = (r[0], r[1]) if f[r[0]] < f[r[1]] else (r[1], r[0])
    xs = pop.xs
    base = xs[lead]
    donor = base + f_scale * (xs[trail] - xs[r[2]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _two_opt_2(pop, target, f_scale, rng):
    r = _distinct_indices(pop.size, 5, target, rng)
    f = pop.fitness
    lead, trail = (r[0], r[1]) if f[r[0]] < f[r[1]] else (r[1], r[0])
    xs = pop.xs
    base = xs[lead]
    donor = base + f_scale * (xs[trail] - xs[r[2]]) + f_scale * (xs[r[3]] - xs[r[4]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _proximity_indices(pop, target, count, rng):
    # Roulette over Euclidean distance from the target, without replacement;
    # remaining weights are renormalized after each pick. A fully collapsed
    # pool (all distances zero) degrades to uniform picks.
    d = np.sqrt(((pop.xs - pop.xs[target]) ** 2).sum(axis=1))
    pool = [i for i in range(pop.size) if i != target]
    weights = d[pool]
    out = []
    for _ in range(count):
        w = weights if weights.sum() > 0.0 else np.ones(len(pool))
        k = _roulette_pick(w, rng)
        out.append(pool.pop(k))
        weights = np.delete(weights, k)
    return out


def _proximity_rand_1(pop, target, f_scale, rng):
    r = _proximity_indices(pop, target, 3, rng)
    xs = pop.xs
    base = xs[r[0]]
    donor = base + f_scale * (xs[r[1]] - xs[r[2]])
    return MutationOutcome(donor, base.copy(), tuple(r))


def _ranking_pbest_1(pop, target, f_scale, rng):
    # target-to-pbest/1 with r1 drawn by rank-proportional roulette: the best
    # member has weight M, the worst weight 1.
    pbest = _pbest_pick(pop, rng)
    m = pop.size
    order = np.argsort(pop.fitness, kind="stable")
    weights = np.empty(m)
    weights[order] = np.arange(m, 0, -1, dtype=float)
    pool = [i for i in range(m) if i != target]
    r1 = pool[_roulette_pick(weights[pool], rng)]
    r2 = _distinct_indices(m, 1, {target, r1}, rng)[0]
    xs = pop.xs
    base = xs[target]
    donor = base + f_scale * (xs[pbest] - base) + f_scale * (xs[r1] - xs[r2])
    return MutationOutcome(donor, base.copy(), (r1, r2))


_STRATEGIES = {
    "rand/1": _rand_1,
    "best/1": _best_1,
    "target-to-best/1": _target_to_best_1,
    "best/2": _best_2,
    "rand/2": _rand_2,
    "target-to-best/2": _target_to_best_2,
    "target-to-pbest/1": _target_to_pbest_1,
    "rand/2/dir": _rand_2_dir,
    "nsde": _nsde,
    "trigonometric": _trigonometric,
    "2-opt/1": _two_opt_1,
    "2-opt/2": _two_opt_2,
    "proximity-rand/1": _proximity_rand_1,
    "ranking-pbest/1": _ranking_pbest_1,
}


def mutate(
    strategy: str,
    pop: Population,
    target: int,
    f_scale: float,
    rng: np.random.Generator,
) -> MutationOutcome:
    """Produce a donor vector for ``target`` with the named strategy."""
    fn = _STRATEGIES.get(strategy)
    if fn is None:
        raise ConfigurationError(
            f"unknown mutation strategy {strategy!r}; valid tags: "
            + ", ".join(MUTATION_TAGS)
        )
    need = INDEX_COUNT[strategy] + 1
    if pop.size < need:
        raise ConfigurationError(
            f"{strategy} needs a population of at least {need}, got {pop.size}"
        )
    if not 0 <= target < pop.size:
        raise ConfigurationError(f"target index {target} outside population")
    if strategy in _NEEDS_FITNESS and np.isnan(pop.fitness).any():
        raise ValueError(f"{strategy} requires a fully evaluated population")
    return fn(pop, target, f_scale, rng)
