"""A finite observed path with cached sample moments and autocovariances.

All estimators use the divisor n (not n-1), at every lag, because the test
statistics are defined in terms of these biased forms.
"""

from __future__ import annotations

import numpy as np


class Series:
    """Immutable real-valued path. Moments and autocovariances are computed
    lazily and cached, since the marginal tests reuse them repeatedly.
    """

    __slots__ = ("_x", "_mean", "_moments", "_acov")

    def __init__(self, values):
        x = np.asarray(values, dtype=float)
        if x.ndim != 1:
            raise ValueError("series values must be one-dimensional")
        if x.size == 0:
            raise ValueError("series must contain at least one value")
        if not np.all(np.isfinite(x)):
            raise ValueError("series values must all be finite")
        x = x.copy()
        x.setflags(write=False)
        self._x = x
        self._mean: float | None = None
        self._moments: dict[int, float] = {}
        self._acov: dict[int, float] = {}

    @property
    def values(self) -> np.ndarray:
        return self._x

    @property
    def n(self) -> int:
        return self._x.size

    def __len__(self) -> int:
        return self._x.size

    def mean(self) -> float:
        """Sample mean (divisor n)."""
        if self._mean is None:
            self._mean = float(np.mean(self._x))
        return self._mean

    def centered_moment(self, k: int) -> float:
        """Sample centered moment of order k >= 2: n^-1 sum (x_i - mean)^k."""
        if int(k) != k or k < 2:
            raise ValueError(f"centered moment order must be an integer >= 2, got {k!r}")
        k = int(k)
        if k not in self._moments:
            dev = self._x - self.mean()
            self._moments[k] = float(np.sum(dev**k) / self.n)
        return self._moments[k]

    def autocovariance(self, t: int) -> float:
        """Sample autocovariance of order t, |t| <= n-1, divisor n at all lags."""
        if int(t) != t:
            raise ValueError(f"lag must be an integer, got {t!r}")
        lag = abs(int(t))
        if lag >= self.n:
            raise ValueError(f"lag {t} out of range for series of length {self.n}")
        if lag == 0:
            # identical formula to the second centered moment, kept exactly equal
            return self.centered_moment(2)
        if lag not in self._acov:
            dev = self._x - self.mean()
            self._acov[lag] = float(np.dot(dev[: self.n - lag], dev[lag:]) / self.n)
        return self._acov[lag]
