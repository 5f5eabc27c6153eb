"""Modular differential evolution with pluggable boundary constraint handling.

The package separates the DE loop into independently configurable operator
families: mutation strategies, crossover kinds, parameter adaptation, and
boundary constraint handling methods (BCHMs). A benchmark runner records,
besides the usual convergence trajectory, the proportion of candidate
solutions that had to be repaired or penalized, so the side effects of each
BCHM can be quantified.
"""

from .core import (
    Budget,
    BudgetExhaustedError,
    ConfigurationError,
    Individual,
    PENALTY,
    Population,
    SearchSpace,
    derive_seed,
    initialize_population,
    make_rng,
    select,
)

__all__ = [
    "Budget",
    "BudgetExhaustedError",
    "ConfigurationError",
    "Individual",
    "PENALTY",
    "Population",
    "SearchSpace",
    "derive_seed",
    "initialize_population",
    "make_rng",
    "select",
]
