"""Success-history parameter adaptation.

A circular memory of H (F, Cr) location pairs is sampled per individual and
updated once per generation from the parameters of strictly improving trials,
weighted by the size of their improvement. F locations move by a weighted
Lehmer mean, Cr locations by a weighted arithmetic mean. With adaptation
disabled the runner simply hands every individual the configured constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

DEFAULT_MEMORY_SIZE = 100
FIXED_F = 0.5
FIXED_CR = 0.9


class SuccessRecord(NamedTuple):
    f_used: float
    cr_used: float
    improvement: float


@dataclass
class ParamMemory:
    """Circular success-history memory; entries start at 0.5."""

    m_f: np.ndarray
    m_cr: np.ndarray
    write_index: int = 0

    @classmethod
    def fresh(cls, size: int = DEFAULT_MEMORY_SIZE) -> "ParamMemory":
        if size < 1:
            raise ValueError("memory size must be at least 1")
        return cls(np.full(size, 0.5), np.full(size, 0.5), 0)

    @property
    def size(self) -> int:
        return self.m_f.size


def sample_parameters(
    mem: ParamMemory, rng: np.random.Generator
) -> tuple[float, float]:
    """Draw (F, Cr) from a uniformly chosen memory slot.

    F is Cauchy(m_f[r], 0.1) redrawn while nonpositive and clamped to 1;
    Cr is Normal(m_cr[r], 0.1) clipped into [0, 1].
    """
    slot = int(rng.integers(mem.size))
    f = mem.m_f[slot] + 0.1 * rng.standard_cauchy()
    while f <= 0.0:
        f = mem.m_f[slot] + 0.1 * rng.standard_cauchy()
    f = min(float(f), 1.0)
    cr = float(np.clip(rng.normal(mem.m_cr[slot], 0.1), 0.0, 1.0))
    return f, cr


def update_memory(mem: ParamMemory, successes: Sequence[SuccessRecord]) -> ParamMemory:
    """Write one new (F, Cr) location pair from this generation's successes.

    Pure function of (mem, successes): returns a new memory with the write
    index advanced cyclically, or ``mem`` unchanged when there were no
    successes. Success weights are improvements normalized to sum to one.
    """
    if not successes:
        return mem
    f_vals = np.array([s.f_used for s in successes])
    cr_vals = np.array([s.cr_used for s in successes])
    imps = np.array([s.improvement for s in successes])
    total = imps.sum()
    if total <= 0.0:
        raise ValueError("success records must carry positive improvements")
    w = imps / total
    new_f = float(np.sum(w * f_vals**2) / np.sum(w * f_vals))
    new_cr = float(np.sum(w * cr_vals))
    m_f = mem.m_f.copy()
    m_cr = mem.m_cr.copy()
    m_f[mem.write_index] = new_f
    m_cr[mem.write_index] = new_cr
    return ParamMemory(m_f, m_cr, (mem.write_index + 1) % mem.size)
