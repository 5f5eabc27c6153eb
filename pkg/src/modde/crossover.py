"""Binomial and exponential crossover.

Both kinds draw from the RNG in a fixed order so trials are replayable:
binomial draws the forced index first and then one uniform per component in
ascending order; exponential draws the start index first and then one uniform
before each extension of the block beyond its first component.
"""

from __future__ import annotations

import numpy as np

from .core import ConfigurationError

CROSSOVER_TAGS = ("bin", "exp")

_ALIASES = {"bin": "bin", "binomial": "bin", "exp": "exp", "exponential": "exp"}


def normalize_crossover(tag: str) -> str:
    kind = _ALIASES.get(tag)
    if kind is None:
        raise ConfigurationError(
            f"unknown crossover kind {tag!r}; valid tags: " + ", ".join(CROSSOVER_TAGS)
        )
    return kind


def binomial_crossover(
    target: np.ndarray, donor: np.ndarray, cr: float, rng: np.random.Generator
) -> np.ndarray:
    """Component j comes from the donor when U(0,1) <= cr or j is the forced index."""
    if target.shape != donor.shape:
        raise ValueError("target and donor must have the same length")
    n = target.size
    j_rand = int(rng.integers(n))
    take = rng.random(n) <= cr
    take[j_rand] = True
    return np.where(take, donor, target)


def exponential_crossover(
    target: np.ndarray, donor: np.ndarray, cr: float, rng: np.random.Generator
) -> np.ndarray:
    """Copy a contiguous donor block, wrapping modulo n.

    The block starts at a uniform index and always covers at least that
    component; it grows while U(0,1) < cr, one draw per attempted extension.
    """
    if target.shape != donor.shape:
        raise ValueError("target and donor must have the same length")
    n = target.size
    trial = target.copy()
    j = int(rng.integers(n))
    trial[j] = donor[j]
    copied = 1
    while copied < n and rng.random() < cr:
        j = (j + 1) % n
        trial[j] = donor[j]
        copied += 1
    return trial


_KINDS = {"bin": binomial_crossover, "exp": exponential_crossover}


def crossover(
    kind: str,
    target: np.ndarray,
    donor: np.ndarray,
    cr: float,
    rng: np.random.Generator,
) -> np.ndarray:
    return _KINDS[normalize_crossover(kind)](target, donor, cr, rng)
