"""Random directions by stick breaking, and projection of a path onto one.

The direction lives in the weighted sequence space with weights a_0 = 1 and
a_i = i^-2 for i >= 1; its components are h_i = sqrt(l_i / a_i) built from
stick lengths l_i, and the final component absorbs the remaining stick mass so
that sum_i h_i^2 a_i = 1 holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RngStream, sample_beta
from .series import Series


def sequence_weight(i: int) -> float:
    """Weight a_i of the sequence space: a_0 = 1, a_i = i^-2 for i >= 1."""
    return 1.0 if i == 0 else 1.0 / (i * i)


def _weights(count: int) -> np.ndarray:
    idx = np.arange(count, dtype=float)
    idx[0] = 1.0
    return 1.0 / (idx * idx)


@dataclass(frozen=True)
class StickBreakingParams:
    """Parameters of the stick-breaking draw.

    `n_cap` bounds the number of sticks by the observed sample length;
    `delta` is the mass left unassigned before truncation kicks in.
    """

    alpha1: float
    alpha2: float
    n_cap: int
    delta: float = 1e-15

    def __post_init__(self):
        if self.alpha1 <= 0.0 or self.alpha2 <= 0.0:
            raise ValueError("alpha1 and alpha2 must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if int(self.n_cap) != self.n_cap or self.n_cap < 1:
            raise ValueError("n_cap must be a positive integer")


def stick_breaking(params: StickBreakingParams, rng: RngStream) -> np.ndarray:
    """Draw stick lengths l_0, l_1, ... with Beta(alpha1, alpha2) fractions.

    Each stick is a beta fraction of the mass still unassigned. Drawing stops
    at the first stick whose cumulative sum reaches 1 - delta, or after n_cap
    sticks, whichever comes first.
    """
    sticks = []
    total = 0.0
    for _ in range(params.n_cap):
        frac = sample_beta(params.alpha1, params.alpha2, rng)
        piece = frac * (1.0 - total)
        sticks.append(piece)
        total += piece
        if total >= 1.0 - params.delta:
            break
    return np.asarray(sticks)


@dataclass(frozen=True)
class ProjectionVector:
    """Truncated direction h_0..h_m with weighted unit norm.

    `sticks` are the source stick lengths; `alpha1`/`alpha2` record the beta
    parameters when the vector was drawn (None when built from raw sticks).
    """

    h: np.ndarray
    m: int
    sticks: np.ndarray
    alpha1: float | None = None
    alpha2: float | None = None

    def weighted_norm_sq(self) -> float:
        """sum_i h_i^2 a_i; equals 1 up to rounding by construction."""
        return float(np.sum(self.h**2 * _weights(self.h.size)))

    def as_dict(self) -> dict:
        return {
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "h": [float(v) for v in self.h],
        }


def build_projection_vector(sticks, n_cap: int) -> ProjectionVector:
    """Assemble the direction from stick lengths.

    h_i = sqrt(l_i / a_i) for each stick; a final component sqrt(rem / a_m)
    absorbs the remaining mass rem = 1 - sum(l_i) when it is positive, which
    forces the weighted norm to 1 exactly.
    """
    sticks = np.asarray(sticks, dtype=float)
    if sticks.ndim != 1 or sticks.size == 0:
        raise ValueError("sticks must be a non-empty one-dimensional sequence")
    if np.any(sticks < 0.0):
        raise ValueError("stick lengths must be non-negative")
    if sticks.size > n_cap:
        raise ValueError("more sticks than the truncation cap allows")
    total = float(np.sum(sticks))
    if total > 1.0 + 1e-12:
        raise ValueError("stick lengths must sum to at most 1")
    remaining = 1.0 - total
    if remaining <= 0.0:
        h = np.sqrt(sticks / _weights(sticks.size))
        return ProjectionVector(h=h, m=sticks.size - 1, sticks=sticks)
    h = np.empty(sticks.size + 1)
    h[:-1] = np.sqrt(sticks / _weights(sticks.size))
    h[-1] = np.sqrt(remaining / sequence_weight(sticks.size))
    return ProjectionVector(h=h, m=sticks.size, sticks=sticks)


def draw_projection_vector(params: StickBreakingParams, rng: RngStream) -> ProjectionVector:
    """Draw sticks and assemble the unit-norm direction in one step."""
    sticks = stick_breaking(params, rng)
    pv = build_projection_vector(sticks, params.n_cap)
    return ProjectionVector(h=pv.h, m=pv.m, sticks=pv.sticks,
                            alpha1=params.alpha1, alpha2=params.alpha2)


def project_series(x: Series, pv: ProjectionVector) -> Series:
    """Project the path onto the direction: Y_t = sum_{i<=min(m,t)} h_i a_i X_{t-i}.

    The output has the same length as the input; early positions use the
    ragged prefix of the direction (only past values down to index 0 exist).
    """
    coeffs = pv.h * _weights(pv.h.size)
    y = np.convolve(x.values, coeffs)[: x.n]
    return Series(y)
