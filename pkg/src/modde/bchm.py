"""Boundary constraint handling methods (BCHMs).

Eleven repair kinds operate on a donor vector through ``repair``; resampling
re-invokes mutation through ``resample_guard``; death-penalty defers to after
crossover and is implemented by ``death_penalty_check``. Feasibility is
always the closed box: a component exactly on a bound is feasible.

A solution counts as repaired when any component changed. For most kinds
that coincides with the donor being infeasible, but transformation also
perturbs feasible components near the bounds, so the flag is derived from
the actual output.

Kernels accept stacked candidates: donor, base, and target may carry leading
axes as long as the last axis holds the components. Per-candidate semantics
apply row by row (conservatism discards whole rows, the projection blends
contract each row by its own factor), which lets bulk feasibility checks run
vectorized while the optimizer repairs one candidate at a time.
"""

from __future__ import annotations

from dataclasses import replace
from typing import NamedTuple

import numpy as np

from .core import ConfigurationError, Population, SearchSpace
from .mutation import MutationOutcome, mutate

BCHM_TAGS = (
    "resampling",
    "reinitialization",
    "projection",
    "reflection",
    "wrapping",
    "transformation",
    "rand-base",
    "midpoint-base",
    "midpoint-target",
    "conservatism",
    "projection-midpoint",
    "projection-base",
    "death-penalty",
)

MAX_RESAMPLES = 100


class RepairContext(NamedTuple):
    donor: np.ndarray
    base: np.ndarray
    target: np.ndarray
    space: SearchSpace
    rng: np.random.Generator


class RepairReport(NamedTuple):
    repaired: bool
    result: np.ndarray | None  # None marks a death-penalty verdict


def _reinitialization(ctx):
    # Violated components are redrawn uniformly inside their bounds, in
    # ascending component order.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    mask = (v < lo) | (v > hi)
    if not mask.any():
        return RepairReport(False, v)
    out = v.copy()
    out[mask] = ctx.rng.uniform(
        np.broadcast_to(lo, v.shape)[mask], np.broadcast_to(hi, v.shape)[mask]
    )
    return RepairReport(True, out)


def _projection(ctx):
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    if not ((v < lo) | (v > hi)).any():
        return RepairReport(False, v)
    return RepairReport(True, np.clip(v, lo, hi))


def _reflection(ctx):
    # Repeated reflection off the violated bound, evaluated in closed form:
    # the excess is folded by the period 2(hi - lo), then reflected at most
    # twice. Zero-width components collapse to the bound.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    mask = (v < lo) | (v > hi)
    if not mask.any():
        return RepairReport(False, v)
    width = hi - lo
    period = np.where(width > 0.0, 2.0 * width, 1.0)
    t = np.mod(v - lo, period)
    folded = np.where(t <= width, lo + t, lo + (period - t))
    folded = np.where(width > 0.0, folded, lo)
    return RepairReport(True, np.where(mask, folded, v))


def _wrapping(ctx):
    # Toroidal wrap: the excess beyond one bound re-enters from the other.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    low = v < lo
    high = v > hi
    if not (low.any() or high.any()):
        return RepairReport(False, v)
    width = hi - lo
    safe = np.where(width > 0.0, width, 1.0)
    out = np.where(low, hi - np.mod(lo - v, safe), v)
    out = np.where(high, lo + np.mod(v - hi, safe), out)
    out = np.where((low | high) & (width == 0.0), lo, out)
    return RepairReport(True, out)


def transformation_offsets(space: SearchSpace) -> tuple[np.ndarray, np.ndarray]:
    """Band widths of the adaptive transformation near each bound."""
    lo, hi = space.lower, space.upper
    half = (hi - lo) / 2.0
    a_low = np.minimum(half, 1.0 + np.abs(lo) / 20.0)
    a_up = np.minimum(half, 1.0 + np.abs(hi) / 20.0)
    return a_low, a_up


def _transformation(ctx):
    # Continuous, piecewise map. Far values are first shifted by the period
    # 2(hi - lo + a_low + a_up) into an invertible window, then mirrored once
    # into the preimage [lo - a_low, hi + a_up], and finally the margins near
    # each bound are smoothed quadratically. Values already in
    # [lo + a_low, hi - a_up] pass through untouched; feasible values inside
    # the margins are perturbed.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    width = hi - lo
    a_low, a_up = transformation_offsets(ctx.space)

    period = 2.0 * (width + a_low + a_up)
    safe_period = np.where(period > 0.0, period, 1.0)
    start = lo - 2.0 * a_low - width / 2.0
    x = v - safe_period * np.floor((v - start) / safe_period)
    x = np.where(x > hi + a_up, 2.0 * (hi + a_up) - x, x)
    x = np.where(x < lo - a_low, 2.0 * (lo - a_low) - x, x)

    den_low = np.where(a_low > 0.0, 4.0 * a_low, 1.0)
    den_up = np.where(a_up > 0.0, 4.0 * a_up, 1.0)
    out = np.where(x < lo + a_low, lo + (x - (lo - a_low)) ** 2 / den_low, x)
    out = np.where(x > hi - a_up, hi - (x - (hi + a_up)) ** 2 / den_up, out)
    out = np.where(width == 0.0, lo, out)

    if np.array_equal(out, v):
        return RepairReport(False, v)
    return RepairReport(True, out)


def _rand_base(ctx):
    # Violated components are redrawn between the violated bound and the base
    # vector's component: low draws, in ascending order, then high draws.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    b = ctx.base
    low = v < lo
    high = v > hi
    if not (low.any() or high.any()):
        return RepairReport(False, v)
    out = v.copy()
    if low.any():
        out[low] = ctx.rng.uniform(np.broadcast_to(lo, v.shape)[low], b[low])
    if high.any():
        out[high] = ctx.rng.uniform(b[high], np.broadcast_to(hi, v.shape)[high])
    return RepairReport(True, out)


def _midpoint_base(ctx):
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    b = ctx.base
    low = v < lo
    high = v > hi
    if not (low.any() or high.any()):
        return RepairReport(False, v)
    out = np.where(low, (lo + b) / 2.0, v)
    out = np.where(high, (b + hi) / 2.0, out)
    return RepairReport(True, out)


def _midpoint_target(ctx):
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    t = ctx.target
    low = v < lo
    high = v > hi
    if not (low.any() or high.any()):
        return RepairReport(False, v)
    out = np.where(low, (lo + t) / 2.0, v)
    out = np.where(high, (t + hi) / 2.0, out)
    return RepairReport(True, out)


def _conservatism(ctx):
    # Any violation discards that donor entirely in favor of its base vector.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    mask = (v < lo) | (v > hi)
    if not mask.any():
        return RepairReport(False, v)
    bad_row = mask.any(axis=-1, keepdims=True)
    return RepairReport(True, np.where(bad_row, ctx.base, v))


def _alpha_blend(anchor, ctx):
    # Contract each donor toward a feasible anchor with the largest alpha in
    # [0, 1] keeping every component of that row in bounds; the binding
    # components land exactly on their bound.
    v = ctx.donor
    lo, hi = ctx.space.lower, ctx.space.upper
    low = v < lo
    high = v > hi
    violated = low | high
    if not violated.any():
        return RepairReport(False, v)
    bound = np.where(high, hi, lo)
    den = np.where(violated, v - anchor, 1.0)
    ratio = np.where(violated, (bound - anchor) / den, 1.0)
    alpha = ratio.min(axis=-1, keepdims=True)
    out = anchor + alpha * (v - anchor)
    binding = violated & (ratio == alpha)
    out[binding] = bound[binding]
    # exact-arithmetic no-op; guards last-ulp fuzz on the other components
    return RepairReport(True, np.clip(out, lo, hi))


def _projection_midpoint(ctx):
    mid = (ctx.space.lower + ctx.space.upper) / 2.0
    return _alpha_blend(mid, ctx)


def _projection_base(ctx):
    return _alpha_blend(ctx.base, ctx)


_KERNELS = {
    "reinitialization": _reinitialization,
    "projection": _projection,
    "reflection": _reflection,
    "wrapping": _wrapping,
    "transformation": _transformation,
    "rand-base": _rand_base,
    "midpoint-base": _midpoint_base,
    "midpoint-target": _midpoint_target,
    "conservatism": _conservatism,
    "projection-midpoint": _projection_midpoint,
    "projection-base": _projection_base,
}


def repair(kind: str, ctx: RepairContext) -> RepairReport:
    """Apply the named repair to the donor in ``ctx``.

    Resampling and death-penalty do not fit the donor-repair signature and
    have their own entry points.
    """
    kernel = _KERNELS.get(kind)
    if kernel is None:
        if kind in ("resampling", "death-penalty"):
            raise ConfigurationError(
                f"{kind} is not a donor repair; use its dedicated entry point"
            )
        raise ConfigurationError(
            f"unknown boundary handling kind {kind!r}; valid tags: "
            + ", ".join(BCHM_TAGS)
        )
    return kernel(ctx)


def resample_guard(
    strategy: str,
    pop: Population,
    target: int,
    f_scale: float,
    space: SearchSpace,
    rng: np.random.Generator,
) -> tuple[MutationOutcome, int]:
    """Re-invoke mutation until the donor is feasible, then fall back.

    At most MAX_RESAMPLES fresh attempts follow the first one; if the last
    donor is still infeasible it is projected onto the bounds. The returned
    attempt count is therefore in [1, MAX_RESAMPLES + 1], and the donor is
    always feasible. The solution counts as repaired iff attempts > 1.
    """
    outcome = mutate(strategy, pop, target, f_scale, rng)
    attempts = 1
    while not space.contains(outcome.donor) and attempts <= MAX_RESAMPLES:
        outcome = mutate(strategy, pop, target, f_scale, rng)
        attempts += 1
    if not space.contains(outcome.donor):
        outcome = replace(
            outcome, donor=np.clip(outcome.donor, space.lower, space.upper)
        )
    return outcome, attempts


def death_penalty_check(trial: np.ndarray, space: SearchSpace) -> RepairReport:
    """Flag an infeasible trial for penalization instead of repairing it.

    A flagged trial must not be evaluated; the runner assigns it the penalty
    fitness without spending budget.
    """
    if space.contains(trial):
        return RepairReport(False, trial)
    return RepairReport(True, None)
