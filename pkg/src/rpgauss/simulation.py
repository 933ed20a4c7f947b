"""Generators for the experimental processes and the rejection-rate harness.

Two generators: an AR(1) recursion with a configurable innovation family and
a burn-in, and a strictly stationary pairwise-independent process with exact
standard-normal marginal built from modular arithmetic over a prime.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .epps import FIXED, RANDOM, epps_test
from .exceptions import DegenerateSeriesError, NumericalError
from .fdr import combined_p
from .lobato_velasco import LvConfig, lv_test
from .rng import InnovationFamily, RngStream, sample_innovations
from .rp import rp_test_multi
from .series import Series
from .special import normal_quantile

DEFAULT_PAST = 1000


@dataclass(frozen=True)
class Ar1Process:
    """X_1 = e_1, X_t = q X_{t-1} + e_t; the first `past` values are discarded."""

    q: float
    innovation: InnovationFamily
    n: int
    past: int = DEFAULT_PAST

    def __post_init__(self):
        if not -1.0 < self.q < 1.0:
            raise ValueError("q must lie in (-1, 1)")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.past < 0:
            raise ValueError("past must be non-negative")


def simulate_ar1(proc: Ar1Process, rng: RngStream) -> Series:
    """Generate past + n values by the recursion and return the last n."""
    total = proc.past + proc.n
    eps = sample_innovations(proc.innovation, total, rng)
    x = np.empty(total)
    x[0] = eps[0]
    q = proc.q
    for t in range(1, total):
        x[t] = q * x[t - 1] + eps[t]
    return Series(x[proc.past:])


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class WstarProcess:
    """Pairwise-independent process with standard-normal marginal, prime p."""

    p: int
    n: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if self.n < 1:
            raise ValueError("n must be positive")


@dataclass(frozen=True)
class WstarPath:
    """A realized path plus the integer levels it was binned from.

    `levels[j]` is the uniform level in {0..p-1} behind `series.values[j]`;
    `y0` is the block increment and `u` the stationarity shift, kept so the
    block-sum structure can be audited exactly."""

    series: Series
    levels: np.ndarray
    y0: int
    u: int


def simulate_wstar_path(proc: WstarProcess, rng: RngStream) -> WstarPath:
    """Draw the process: per block of length p the levels are z0 + k*y0 mod p,
    shifted by u; level k maps to the normal quantile of (k + u01)/p, an exact
    draw from N(0,1) conditioned between the k/p and (k+1)/p quantiles."""
    p, n = proc.p, proc.n
    y0 = int(rng.integers(p))
    u = int(rng.integers(p))
    blocks = (n + u + p - 1) // p
    starts = np.asarray(rng.integers(p, size=blocks))
    z = (starts[:, None] + np.arange(p)[None, :] * y0) % p
    levels = z.ravel()[u:u + n].astype(int)
    uniforms = rng.randoms(n)
    values = np.fromiter(
        (normal_quantile((k + uv) / p) for k, uv in zip(levels, uniforms)),
        dtype=float, count=n)
    return WstarPath(series=Series(values), levels=levels, y0=y0, u=u)


def simulate_wstar(proc: WstarProcess, rng: RngStream) -> Series:
    return simulate_wstar_path(proc, rng).series


Process = Ar1Process | WstarProcess


def simulate(proc: Process, rng: RngStream) -> Series:
    if isinstance(proc, Ar1Process):
        return simulate_ar1(proc, rng)
    if isinstance(proc, WstarProcess):
        return simulate_wstar(proc, rng)
    raise TypeError(f"unknown process type: {type(proc).__name__}")


def parse_test_kind(text: str) -> tuple[str, int | None]:
    """Parse a test-kind token: E, G, GE, RP, or RPmulti:k (2k projections)."""
    token = text.strip()
    upper = token.upper()
    if upper in ("E", "G", "GE", "RP"):
        return upper, None
    if upper.startswith("RPMULTI:"):
        try:
            k = int(token.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"malformed test kind {text!r}") from None
        if k < 1:
            raise ValueError("RPmulti needs a positive pair count")
        return "RPmulti", k
    raise ValueError(f"unknown test kind {text!r}")


def compute_p_value(series: Series, kind: str, rng: RngStream,
                    k_pairs: int | None = None, epps_mode: str | None = None,
                    lv: LvConfig = LvConfig()) -> float:
    """p-value of one test on one series.

    E runs the characteristic-function test (fixed frequencies unless
    overridden); G the skewness-kurtosis test; GE combines one random-frequency
    CF test with one skewness-kurtosis test by the FDR rule; RP / RPmulti run
    the projection test with 4 / 2*k_pairs projections.
    """
    if kind == "E":
        return epps_test(series, epps_mode or FIXED, rng).p_value
    if kind == "G":
        return lv_test(series, lv).p_value
    if kind == "GE":
        p_e = epps_test(series, epps_mode or RANDOM, rng).p_value
        p_g = lv_test(series, lv).p_value
        return combined_p([p_e, p_g])
    if kind == "RP":
        return rp_test_multi(series, 2, rng, epps_mode=epps_mode or RANDOM, lv=lv).combined_p
    if kind == "RPmulti":
        if k_pairs is None:
            raise ValueError("RPmulti needs k_pairs")
        return rp_test_multi(series, k_pairs, rng, epps_mode=epps_mode or RANDOM,
                             lv=lv).combined_p
    raise ValueError(f"unknown test kind {kind!r}")


@dataclass(frozen=True)
class RateResult:
    rate: float
    se: float
    reps: int
    rejected: int
    errors: int


def rejection_rate(process: Process, test: str, reps: int, alpha: float,
                   rng: RngStream, epps_mode: str | None = None,
                   lv: LvConfig = LvConfig(), workers: int = 1) -> RateResult:
    """Fraction of replications whose p-value is <= alpha, with binomial SE.

    Replication i runs on the stream (master_seed, stream_id=i): the generator
    and the test consume that stream in sequence, so the result depends only
    on the master seed. Failed replications (degenerate series, numerical
    breakdown) are dropped from the denominator when they stay within 1% of
    reps; beyond that the run aborts.
    """
    if reps < 1:
        raise ValueError("reps must be positive")
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    kind, k_pairs = parse_test_kind(test)

    def one(i: int) -> tuple[bool, bool]:
        stream = rng.for_replication(i)
        try:
            path = simulate(process, stream)
            p = compute_p_value(path, kind, stream, k_pairs=k_pairs,
                                epps_mode=epps_mode, lv=lv)
            return p <= alpha, False
        except (DegenerateSeriesError, NumericalError):
            return False, True

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, range(reps)))
    else:
        outcomes = [one(i) for i in range(reps)]

    errors = sum(1 for _, failed in outcomes if failed)
    if errors > 0.01 * reps:
        raise NumericalError(f"{errors} of {reps} replications failed")
    used = reps - errors
    rejected = sum(1 for hit, failed in outcomes if hit and not failed)
    rate = rejected / used
    se = math.sqrt(rate * (1.0 - rate) / used)
    return RateResult(rate=rate, se=se, reps=used, rejected=rejected, errors=errors)
