"""False-discovery-rate combination of dependent p-values.

Uses the dependence-robust correction: with ordered p-values p_(1) <= ... <=
p_(k), rejection at level alpha happens when some p_(i) <= i*alpha / (k*H_k)
where H_k = sum_{j<=k} 1/j, and the combined p-value is the smallest level at
which that occurs, p0 = k*H_k * min_i p_(i)/i (clamped to 1).
"""

from __future__ import annotations

import math


def _validated(ps) -> list[float]:
    ps = [float(p) for p in ps]
    if not ps:
        raise ValueError("need at least one p-value")
    for p in ps:
        if not 0.0 <= p <= 1.0 or not math.isfinite(p):
            raise ValueError(f"p-values must lie in [0, 1], got {p!r}")
    return ps


def _harmonic(k: int) -> float:
    return sum(1.0 / j for j in range(1, k + 1))


def by_reject(ps, alpha: float) -> tuple[bool, int | None]:
    """Level-alpha rejection decision.

    Returns (reject, witness) where witness is the largest 1-based order index
    i with p_(i) <= i*alpha / (k*H_k), or None when not rejecting.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    ps = sorted(_validated(ps))
    k = len(ps)
    scale = alpha / (k * _harmonic(k))
    witness = None
    for i, p in enumerate(ps, start=1):
        if p <= i * scale:
            witness = i
    return witness is not None, witness


def combined_p(ps) -> float:
    """Combined p-value k*H_k * min_i p_(i)/i, clamped to 1."""
    ps = sorted(_validated(ps))
    k = len(ps)
    p0 = k * _harmonic(k) * min(p / i for i, p in enumerate(ps, start=1))
    return min(1.0, p0)
