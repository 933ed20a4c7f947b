"""Characteristic-function test of marginal normality for a stationary series.

The empirical characteristic function at frequencies lambda_1..lambda_N is
compared with the best-fitting Gaussian characteristic function through a
quadratic form studentized by the spectral density matrix of the cos/sin
process at frequency zero. n times the minimized form is asymptotically
chi-square with 2N - 2 degrees of freedom under normality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSeriesError, NumericalError
from .rng import RngStream, sample_abs_normal
from .series import Series
from .special import chi_square_sf

FIXED = "fixed"
RANDOM = "random"

_XI_FIXED = (1.0, 2.0)
_XI_SDS = (1.0, 2.0)         # random mode: |N(0,1)| and |N(0,4)|
_XI_MIN = 1e-6               # redraw guard against degenerate frequencies
_PENALTY = 1e6
_MAX_ITER = 500
_REL_SPREAD = 1e-10


@dataclass(frozen=True)
class Lambda:
    """Strictly positive, pairwise distinct test frequencies."""

    values: np.ndarray
    mode: str

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("need at least two frequencies")
        if np.any(vals <= 0.0) or not np.all(np.isfinite(vals)):
            raise ValueError("frequencies must be finite and strictly positive")
        if np.unique(vals).size != vals.size:
            raise ValueError("frequencies must be pairwise distinct")
        if self.mode not in (FIXED, RANDOM):
            raise ValueError(f"mode must be {FIXED!r} or {RANDOM!r}")
        object.__setattr__(self, "values", vals)

    @property
    def count(self) -> int:
        return self.values.size


def draw_lambda(gamma_hat: float, mode: str = FIXED, rng: RngStream | None = None) -> Lambda:
    """Frequencies lambda_j = xi_j / sqrt(gamma_hat).

    Fixed mode uses xi = (1, 2); random mode draws xi_1 ~ |N(0,1)| and
    xi_2 ~ |N(0,4)|, redrawing when either xi falls below 1e-6 or the two are
    closer than 1e-6 (the frequencies must stay distinct and positive).
    """
    if gamma_hat <= 0.0:
        raise DegenerateSeriesError("sample variance must be positive to scale frequencies")
    if mode == FIXED:
        xi = _XI_FIXED
    elif mode == RANDOM:
        if rng is None:
            raise ValueError("random mode needs an RngStream")
        while True:
            xi = (sample_abs_normal(_XI_SDS[0], rng), sample_abs_normal(_XI_SDS[1], rng))
            if min(xi) >= _XI_MIN and abs(xi[0] - xi[1]) >= _XI_MIN:
                break
    else:
        raise ValueError(f"unknown lambda mode {mode!r}")
    return Lambda(values=np.asarray(xi) / math.sqrt(gamma_hat), mode=mode)


def _cf_components(values: np.ndarray, lam_values: np.ndarray) -> np.ndarray:
    """Rows cos(l1*y), sin(l1*y), cos(l2*y), sin(l2*y), ... as a (2N, n) array."""
    args = np.outer(lam_values, values)
    comp = np.empty((2 * lam_values.size, values.size))
    comp[0::2] = np.cos(args)
    comp[1::2] = np.sin(args)
    return comp


def empirical_cf_vector(y: Series, lam: Lambda) -> np.ndarray:
    """(Re, Im) pairs of the empirical characteristic function at each frequency."""
    return _cf_components(y.values, lam.values).mean(axis=1)


def gaussian_cf_vector(nu: float, rho: float, lam: Lambda) -> np.ndarray:
    """(Re, Im) pairs of the N(nu, rho) characteristic function at each frequency."""
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    lv = lam.values
    amp = np.exp(-0.5 * rho * lv**2)
    out = np.empty(2 * lv.size)
    out[0::2] = amp * np.cos(nu * lv)
    out[1::2] = amp * np.sin(nu * lv)
    return out


def _lag_window(n: int) -> int:
    # floor(n^(2/5)) via exact integer arithmetic: largest c with c^5 <= n^2
    c = int(n**0.4)
    while (c + 1) ** 5 <= n * n:
        c += 1
    while c**5 > n * n:
        c -= 1
    return c


def spectral_density_at_zero(y: Series, lam: Lambda) -> np.ndarray:
    """Lag-window estimate of the spectral density matrix of the cos/sin
    process at frequency zero, with triangular weights up to floor(n^(2/5));
    symmetrized as (M + M^T)/2 after assembly.
    """
    n = y.n
    comp = _cf_components(y.values, lam.values)
    dev = comp - comp.mean(axis=1, keepdims=True)
    cap = _lag_window(n)
    m = dev @ dev.T
    for i in range(1, cap + 1):
        w = 1.0 - i / cap
        if w == 0.0 or i >= n:
            continue
        m += (2.0 * w) * (dev[:, : n - i] @ dev[:, i:].T)
    m /= 2.0 * math.pi * n
    return (m + m.T) / 2.0


def pseudo_inverse(mat: np.ndarray, tol_rel: float = 1e-12) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of a symmetric matrix via eigendecomposition.

    Eigenvalues of magnitude below tol_rel times the largest magnitude are
    treated as zero, which keeps the inverse finite when the estimated
    spectral matrix is numerically singular.
    """
    a = np.asarray(mat, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if float(np.max(np.abs(a - a.T))) > 1e-10 * (scale + 1.0):
        raise ValueError("matrix must be symmetric")
    sym = (a + a.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(sym)
    cutoff = tol_rel * float(np.max(np.abs(eigvals)))
    inv = np.zeros_like(eigvals)
    keep = np.abs(eigvals) >= cutoff
    if cutoff == 0.0:
        keep = np.zeros_like(keep)
    inv[keep] = 1.0 / eigvals[keep]
    return (eigvecs * inv) @ eigvecs.T


def q_form(g_hat: np.ndarray, g_model: np.ndarray, g_plus: np.ndarray) -> float:
    """(g_hat - g_model)^T G+ (g_hat - g_model), clamped to 0 when it dips
    within tolerance below zero; a larger negative value signals a broken
    pseudo-inverse and raises."""
    d = np.asarray(g_hat, dtype=float) - np.asarray(g_model, dtype=float)
    if d.ndim != 1 or np.shape(g_plus) != (d.size, d.size):
        raise ValueError("dimension mismatch between vectors and matrix")
    with np.errstate(invalid="ignore", over="ignore"):
        q = float(d @ g_plus @ d)
    if not math.isfinite(q):
        raise NumericalError("quadratic form is not finite")
    if q < -1e-12:
        raise NumericalError(f"quadratic form is negative beyond tolerance: {q}")
    return max(q, 0.0)


def _nelder_mead(fn, start, offsets, max_iter=_MAX_ITER, rel_spread=_REL_SPREAD):
    """Downhill-simplex minimization in 2D.

    Stops when every coordinate range of the simplex is below rel_spread
    relative to |best| + initial offset (a scale that never vanishes), or
    after max_iter iterations.
    """
    start = np.asarray(start, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    pts = [start.copy(),
           start + np.array([offsets[0], 0.0]),
           start + np.array([0.0, offsets[1]])]
    vals = [fn(p) for p in pts]

    for _ in range(max_iter):
        order = np.argsort(vals, kind="stable")
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        best = pts[0]
        spread = 0.0
        for j in range(2):
            coord = (pts[0][j], pts[1][j], pts[2][j])
            spread = max(spread, (max(coord) - min(coord)) / (abs(best[j]) + abs(offsets[j])))
        if spread < rel_spread:
            break

        centroid = (pts[0] + pts[1]) / 2.0
        reflected = centroid + (centroid - pts[2])
        f_r = fn(reflected)
        if vals[0] <= f_r < vals[1]:
            pts[2], vals[2] = reflected, f_r
        elif f_r < vals[0]:
            expanded = centroid + 2.0 * (centroid - pts[2])
            f_e = fn(expanded)
            if f_e < f_r:
                pts[2], vals[2] = expanded, f_e
            else:
                pts[2], vals[2] = reflected, f_r
        else:
            if f_r < vals[2]:
                contracted = centroid + 0.5 * (reflected - centroid)
                f_c = fn(contracted)
                if f_c <= f_r:
                    pts[2], vals[2] = contracted, f_c
                    continue
            else:
                contracted = centroid - 0.5 * (centroid - pts[2])
                f_c = fn(contracted)
                if f_c < vals[2]:
                    pts[2], vals[2] = contracted, f_c
                    continue
            # shrink toward the best vertex
            for i in (1, 2):
                pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                vals[i] = fn(pts[i])

    i_best = int(np.argmin(vals))
    return pts[i_best], vals[i_best]


def _fit_gaussian_cf(g_target, g_plus, lam, mu0, gamma0):
    """Minimize the studentized distance between g_target and the Gaussian CF
    over (nu, rho), starting at (mu0, gamma0) with one restart."""
    sd = math.sqrt(gamma0)
    nu_lo, nu_hi = mu0 - 10.0 * sd, mu0 + 10.0 * sd
    rho_lo, rho_hi = gamma0 / 100.0, 100.0 * gamma0

    def objective(point):
        nu, rho = float(point[0]), float(point[1])
        nu_c = min(max(nu, nu_lo), nu_hi)
        rho_c = min(max(rho, rho_lo), rho_hi)
        violation = abs(nu - nu_c) + abs(rho - rho_c)
        val = q_form(g_target, gaussian_cf_vector(nu_c, rho_c, lam), g_plus)
        val += _PENALTY * violation
        if not math.isfinite(val):
            raise NumericalError(f"objective is not finite at ({nu}, {rho})")
        return val

    offsets = (0.1 * sd, 0.1 * gamma0)
    first, f_first = _nelder_mead(objective, (mu0, gamma0), offsets)
    second, f_second = _nelder_mead(objective, first, offsets)
    point = second if f_second <= f_first else first
    nu = min(max(float(point[0]), nu_lo), nu_hi)
    rho = min(max(float(point[1]), rho_lo), rho_hi)
    return nu, rho, q_form(g_target, gaussian_cf_vector(nu, rho, lam), g_plus)


def minimize_q(y: Series, lam: Lambda, target_cf: np.ndarray | None = None):
    """Best-fitting Gaussian parameters (nu, rho) and the minimized form.

    Assembles the empirical CF vector and the pseudo-inverted spectral matrix,
    then runs the simplex descent from (mean, variance). `target_cf` replaces
    the empirical CF vector (testing seam for exact-fit checks).

    Returns (mu_n, gamma_n, q_min).
    """
    mu0 = y.mean()
    gamma0 = y.autocovariance(0)
    if gamma0 <= 0.0:
        raise DegenerateSeriesError("sample variance must be positive")
    g_target = empirical_cf_vector(y, lam) if target_cf is None else np.asarray(target_cf, float)
    g_plus = pseudo_inverse(2.0 * math.pi * spectral_density_at_zero(y, lam))
    return _fit_gaussian_cf(g_target, g_plus, lam, mu0, gamma0)


@dataclass(frozen=True)
class EppsResult:
    statistic: float          # n * Q at the fitted parameters
    df: int
    p_value: float
    mu_n: float
    gamma_n: float
    lam: Lambda

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
            "mu_n": self.mu_n,
            "gamma_n": self.gamma_n,
            "lambda": [float(v) for v in self.lam.values],
            "mode": self.lam.mode,
        }


def epps_test(y: Series, mode: str = FIXED, rng: RngStream | None = None) -> EppsResult:
    """Run the characteristic-function test.

    Draws the frequencies (per `mode`), minimizes the studentized CF distance
    over the Gaussian family, and calibrates n*Q against chi-square(2N - 2).

    Requires n >= 8 and a non-constant series.
    """
    if y.n < 8:
        raise ValueError(f"series too short for testing (n={y.n} < 8)")
    gamma0 = y.autocovariance(0)
    if gamma0 <= 0.0:
        raise DegenerateSeriesError("constant series has no defined test statistic")
    lam = draw_lambda(gamma0, mode, rng)
    mu_n, gamma_n, q_min = minimize_q(y, lam)
    stat = y.n * q_min
    df = 2 * lam.count - 2
    return EppsResult(statistic=float(stat), df=df, p_value=chi_square_sf(stat, df),
                      mu_n=mu_n, gamma_n=gamma_n, lam=lam)
