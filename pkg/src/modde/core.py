"""Core types for the DE engine: search space, population, budget accounting,
deterministic RNG construction, and elitist selection."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

# Fitness assigned to penalized trials. Strictly greater than any finite
# objective value, and two penalized trials compare equal, so a penalized
# trial can never displace its parent.
PENALTY = float("inf")


class ConfigurationError(ValueError):
    """Invalid user-facing configuration: unknown tags, bad sizes, bad bounds."""


class BudgetExhaustedError(RuntimeError):
    """An objective evaluation was requested beyond the allotted budget."""


def derive_seed(*parts) -> int:
    """Mix arbitrary labels into a stable 64-bit seed.

    SHA-256 over the unit-separator-joined string forms of ``parts``,
    truncated to 8 little-endian bytes. The mix is stable across platforms
    and sessions, so per-run seeds recorded in logs can be replayed anywhere.
    """
    blob = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "little")


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; equal seeds yield bit-identical draw sequences."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box with closed bounds."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise ConfigurationError(
                "bounds must be one-dimensional arrays of equal, nonzero length"
            )
        if np.any(lower > upper):
            raise ConfigurationError(
                "degenerate search space: lower bound exceeds upper bound"
            )

    @property
    def n(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        """Closed-bound membership test; values exactly on a bound count."""
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    @classmethod
    def symmetric(cls, n: int, half_width: float = 5.0) -> "SearchSpace":
        return cls(np.full(n, -half_width), np.full(n, half_width))


@dataclass
class Individual:
    """Candidate solution; ``fitness`` is None until evaluated."""

    x: np.ndarray
    fitness: float | None = None


@dataclass
class Population:
    """Fixed-size population stored as arrays.

    ``fitness`` uses NaN to mark unevaluated members; helpers below
    translate to the Individual view where object semantics are wanted.
    """

    xs: np.ndarray
    fitness: np.ndarray
    generation: int = 0

    @property
    def size(self) -> int:
        return self.xs.shape[0]

    @property
    def n(self) -> int:
        return self.xs.shape[1]

    def member(self, i: int) -> Individual:
        f = self.fitness[i]
        return Individual(self.xs[i].copy(), None if np.isnan(f) else float(f))

    def best_index(self) -> int:
        """Index of the lowest fitness; ties broken by lowest index."""
        if np.isnan(self.fitness).any():
            raise ValueError("population is not fully evaluated")
        return int(np.argmin(self.fitness))


def initialize_population(
    space: SearchSpace, size: int, rng: np.random.Generator
) -> Population:
    """Uniform initialization inside the closed box, members unevaluated."""
    if size < 4:
        raise ConfigurationError(f"population size must be at least 4, got {size}")
    xs = rng.uniform(space.lower, space.upper, size=(size, space.n))
    return Population(xs=xs, fitness=np.full(size, np.nan), generation=0)


def select(parent: Individual, trial: Individual) -> Individual:
    """Elitist one-to-one selection: the trial wins only on strict improvement.

    Ties keep the parent, which also makes two penalized fitness values
    resolve in the parent's favor.
    """
    if parent.fitness is None or trial.fitness is None:
        raise ValueError("selection requires evaluated fitness on both individuals")
    return trial if trial.fitness < parent.fitness else parent


@dataclass
class Budget:
    """Objective evaluation budget; ``spend`` refuses to overdraw."""

    max_evaluations: int
    used_evaluations: int = 0

    @property
    def remaining(self) -> int:
        return self.max_evaluations - self.used_evaluations

    @property
    def exhausted(self) -> bool:
        return self.used_evaluations >= self.max_evaluations

    def spend(self, count: int = 1) -> None:
        if self.used_evaluations + count > self.max_evaluations:
            raise BudgetExhaustedError(
                f"refusing evaluation {self.used_evaluations + count} of "
                f"{self.max_evaluations}"
            )
        self.used_evaluations += count
