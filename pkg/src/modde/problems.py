"""Benchmark surrogate functions on [-5, 5]^n.

One noisy baseline plus six deterministic functions with distinct landscape
characters: separable unimodal, separable linear with a corner optimum, a
bent valley, a rotated ill-conditioned quadratic, separable multimodal with
regular structure, and multimodal with weak irregular structure. Every
deterministic instance is shifted by a random offset and has a random target
value f_opt; instances are fully determined by (tag, n, instance_seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Budget, ConfigurationError, SearchSpace, derive_seed, make_rng

FUNCTION_TAGS = (
    "f0-noise",
    "sphere",
    "linear-slope",
    "rosenbrock",
    "ellipsoid-rot",
    "rastrigin",
    "random-peaks",
)

# Deterministic functions used by benchmark sweeps; the noise baseline is
# requested explicitly.
BENCHMARK_TAGS = FUNCTION_TAGS[1:]

N_PEAKS = 21


@dataclass(frozen=True)
class ProblemInstance:
    tag: str
    n: int
    space: SearchSpace
    shift: np.ndarray | None
    rotation: np.ndarray | None
    f_opt: float
    instance_seed: int
    coeffs: np.ndarray | None = None
    slope_sign: np.ndarray | None = None
    peaks_x: np.ndarray | None = None
    peaks_w: np.ndarray | None = None


def make_instance(tag: str, n: int, instance_seed: int) -> ProblemInstance:
    """Deterministically build a problem instance on [-5, 5]^n."""
    if tag not in FUNCTION_TAGS:
        raise ConfigurationError(
            f"unknown function tag {tag!r}; valid tags: " + ", ".join(FUNCTION_TAGS)
        )
    if n < 2:
        raise ConfigurationError(f"dimension must be at least 2, got {n}")
    rng = make_rng(derive_seed("problem", tag, n, instance_seed))
    space = SearchSpace.symmetric(n)
    fields = dict(
        tag=tag,
        n=n,
        space=space,
        shift=None,
        rotation=None,
        f_opt=0.0,
        instance_seed=instance_seed,
    )
    if tag == "f0-noise":
        return ProblemInstance(**fields)

    fields["f_opt"] = float(rng.uniform(-100.0, 100.0))
    if tag == "linear-slope":
        # optimum at a random corner of the box
        signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        fields["shift"] = 5.0 * signs
        fields["slope_sign"] = signs
        fields["coeffs"] = 10.0 ** (np.arange(n) / (n - 1))
    elif tag == "random-peaks":
        center = rng.uniform(-4.5, 4.5, n)  # global peak kept interior
        others = rng.uniform(-5.0, 5.0, (N_PEAKS - 1, n))
        fields["shift"] = center
        fields["peaks_x"] = np.vstack([center, others])
        fields["peaks_w"] = np.concatenate(
            [[0.0], rng.uniform(0.5, 5.0, N_PEAKS - 1)]
        )
    else:
        fields["shift"] = rng.uniform(-5.0, 5.0, n)
        if tag == "ellipsoid-rot":
            q, r = np.linalg.qr(rng.standard_normal((n, n)))
            fields["rotation"] = q * np.sign(np.diag(r))
            fields["coeffs"] = 10.0 ** (6.0 * np.arange(n) / (n - 1))
    return ProblemInstance(**fields)


def _f0_noise(inst, x, rng):
    return float(rng.random())


def _sphere(inst, x, rng):
    z = x - inst.shift
    return float(z @ z) + inst.f_opt


def _linear_slope(inst, x, rng):
    # Beyond the optimal corner the contribution stays at zero, so the corner
    # is a minimum even against perturbations leaving the box.
    gain = np.maximum(inst.space.upper - x * inst.slope_sign, 0.0)
    return float(inst.coeffs @ gain) + inst.f_opt


def _rosenbrock(inst, x, rng):
    z = x - inst.shift + 1.0  # valley floor ends exactly at the shift
    a = z[:-1]
    b = z[1:]
    return float(np.sum(100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2)) + inst.f_opt


def _ellipsoid_rot(inst, x, rng):
    y = inst.rotation @ (x - inst.shift)
    return float(inst.coeffs @ (y * y)) + inst.f_opt


def _rastrigin(inst, x, rng):
    z = x - inst.shift
    return (
        10.0 * inst.n
        + float(np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z)))
        + inst.f_opt
    )


def _random_peaks(inst, x, rng):
    d = inst.peaks_x - x
    return float(np.min(inst.peaks_w + np.sum(d * d, axis=1))) + inst.f_opt


_EVALUATORS = {
    "f0-noise": _f0_noise,
    "sphere": _sphere,
    "linear-slope": _linear_slope,
    "rosenbrock": _rosenbrock,
    "ellipsoid-rot": _ellipsoid_rot,
    "rastrigin": _rastrigin,
    "random-peaks": _random_peaks,
}


def evaluate(
    inst: ProblemInstance, x: np.ndarray, budget: Budget, rng: np.random.Generator
) -> float:
    """Spend one evaluation and return f(x); x need not be feasible."""
    budget.spend()
    return _EVALUATORS[inst.tag](inst, x, rng)
