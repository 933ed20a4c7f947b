import math

import numpy as np
import pytest

from rpgauss import (DegenerateSeriesError, Lambda, NumericalError, RngStream,
                     Series, draw_lambda, empirical_cf_vector, epps_test,
                     gaussian_cf_vector, minimize_q, pseudo_inverse, q_form,
                     spectral_density_at_zero)
from rpgauss.epps import _fit_gaussian_cf, _lag_window

from oracles import ks_distance, spectral_brute


def _lam(values, mode="fixed"):
    return Lambda(values=np.asarray(values, float), mode=mode)


# -- frequency drawing -----------------------------------------------------------

def test_fixed_lambda_scaling():
    lam = draw_lambda(4.0, "fixed")
    assert np.allclose(lam.values, [0.5, 1.0])
    lam = draw_lambda(1.0, "fixed")
    assert np.allclose(lam.values, [1.0, 2.0])


def test_random_lambda_distinct_positive():
    rng = RngStream(61)
    for _ in range(10_000):
        lam = draw_lambda(2.5, "random", rng)
        assert lam.values[0] > 0.0 and lam.values[1] > 0.0
        assert lam.values[0] != lam.values[1]


def test_lambda_requires_positive_variance():
    with pytest.raises(DegenerateSeriesError):
        draw_lambda(0.0, "fixed")


def test_lambda_type_guards():
    with pytest.raises(ValueError):
        _lam([1.0, 1.0])
    with pytest.raises(ValueError):
        _lam([1.0, -2.0])
    with pytest.raises(ValueError):
        Lambda(values=np.array([1.0, 2.0]), mode="other")


# -- characteristic-function vectors ----------------------------------------------

def test_empirical_cf_point_mass_at_zero():
    assert np.allclose(empirical_cf_vector(Series([0.0]), _lam([1.0, 2.0])),
                       [1.0, 0.0, 1.0, 0.0])


def test_empirical_cf_pi_pair():
    got = empirical_cf_vector(Series([math.pi, -math.pi]), _lam([1.0, 2.0]))
    assert np.allclose(got, [-1.0, 0.0, 1.0, 0.0], atol=1e-12)


def test_empirical_cf_direct_summation():
    y = [0.3, 1.7, -0.4]
    lam = _lam([1.0, 2.0])
    expected = []
    for lv in (1.0, 2.0):
        expected.append(sum(math.cos(lv * v) for v in y) / 3.0)
        expected.append(sum(math.sin(lv * v) for v in y) / 3.0)
    assert np.allclose(empirical_cf_vector(Series(y), lam), expected, atol=1e-14)


def test_empirical_cf_modulus_bound():
    rng = RngStream(62)
    lam = _lam([0.7, 1.9])
    for _ in range(20):
        vec = empirical_cf_vector(Series(rng.standard_normal(50)), lam)
        mods = vec[0::2] ** 2 + vec[1::2] ** 2
        assert np.all(mods <= 1.0 + 1e-12)


def test_gaussian_cf_closed_forms():
    lam = _lam([1.0, 2.0])
    assert np.allclose(gaussian_cf_vector(0.0, 1.0, lam),
                       [math.exp(-0.5), 0.0, math.exp(-2.0), 0.0])
    assert np.allclose(gaussian_cf_vector(0.0, 1e-14, lam), [1.0, 0.0, 1.0, 0.0], atol=1e-9)
    expected = [math.exp(-1.0) * math.cos(1.0), math.exp(-1.0) * math.sin(1.0),
                math.exp(-4.0) * math.cos(2.0), math.exp(-4.0) * math.sin(2.0)]
    assert np.allclose(gaussian_cf_vector(1.0, 2.0, lam), expected)


def test_gaussian_cf_domain():
    with pytest.raises(ValueError):
        gaussian_cf_vector(0.0, 0.0, _lam([1.0, 2.0]))


# -- spectral matrix ---------------------------------------------------------------

def test_lag_window_floor():
    assert _lag_window(1) == 1
    assert _lag_window(32) == 4   # 32^(2/5) = 4 exactly
    assert _lag_window(100) == 6
    assert _lag_window(1000) == 15


def test_spectral_constant_series_is_zero():
    m = spectral_density_at_zero(Series([2.0] * 12), _lam([1.0, 2.0]))
    assert np.allclose(m, 0.0)


def test_spectral_single_point_is_zero():
    m = spectral_density_at_zero(Series([0.7]), _lam([1.0, 2.0]))
    assert np.allclose(m, 0.0)


def test_spectral_example_against_brute_force():
    y = [0.3, 1.7, -0.4, 0.9, -1.2]
    lam = _lam([1.0, 2.0])
    mine = spectral_density_at_zero(Series(y), lam)
    brute = spectral_brute(y, lam.values)
    assert np.allclose(mine, brute, rtol=0, atol=1e-12 * (np.abs(brute).max() + 1.0))
    assert np.allclose(mine, mine.T)


def test_spectral_random_series_against_brute_force():
    rng = RngStream(63)
    for _ in range(10):
        n = int(8 + rng.integers(57))
        y = rng.standard_normal(n)
        lam = draw_lambda(float(np.var(y)), "fixed")
        mine = spectral_density_at_zero(Series(y), lam)
        brute = spectral_brute(y, lam.values)
        assert np.max(np.abs(mine - brute)) <= 1e-10 * (np.abs(brute).max() + 1e-300)


# -- pseudo-inverse -----------------------------------------------------------------

def test_pinv_identity():
    assert np.allclose(pseudo_inverse(np.eye(4)), np.eye(4))


def test_pinv_diagonal_with_zero():
    got = pseudo_inverse(np.diag([2.0, 0.0, 1.0, 4.0]))
    assert np.allclose(got, np.diag([0.5, 0.0, 1.0, 0.25]))


def test_pinv_penrose_identities():
    gen = np.random.default_rng(64)
    for i in range(20):
        rank = 1 + i % 4
        b = gen.standard_normal((rank, 4))
        m = b.T @ b
        plus = pseudo_inverse(m)
        assert np.allclose(m @ plus @ m, m, atol=1e-8)
        assert np.allclose(plus @ m @ plus, plus, atol=1e-8)
        assert np.allclose((m @ plus).T, m @ plus, atol=1e-8)
        assert np.allclose((plus @ m).T, plus @ m, atol=1e-8)


def test_pinv_rejects_asymmetric():
    with pytest.raises(ValueError):
        pseudo_inverse(np.array([[1.0, 2.0], [0.0, 1.0]]))


# -- quadratic form ------------------------------------------------------------------

def test_q_form_zero_at_equality():
    v = np.array([0.1, 0.2, 0.3, 0.4])
    assert q_form(v, v, np.eye(4)) == 0.0


def test_q_form_identity_is_squared_distance():
    a = np.array([1.0, 0.0, 2.0, 0.0])
    b = np.array([0.0, 0.0, 0.0, 0.0])
    assert q_form(a, b, np.eye(4)) == pytest.approx(5.0)


def test_q_form_weighted_example():
    a = np.array([1.0, 0.0, 0.0, 0.0])
    b = np.zeros(4)
    assert q_form(a, b, np.diag([3.0, 1.0, 1.0, 1.0])) == pytest.approx(3.0)


def test_q_form_flags_broken_inverse():
    a = np.array([1.0, 0.0, 0.0, 0.0])
    with pytest.raises(NumericalError):
        q_form(a, np.zeros(4), -np.eye(4))


# -- minimization ---------------------------------------------------------------------

def test_minimize_exact_fit_recovers_parameters():
    rng = RngStream(65)
    y = Series(0.7 + math.sqrt(1.3) * rng.standard_normal(500))
    lam = draw_lambda(y.autocovariance(0), "fixed")
    target = gaussian_cf_vector(0.7, 1.3, lam)
    mu, gamma, q_min = minimize_q(y, lam, target_cf=target)
    assert mu == pytest.approx(0.7, abs=1e-4)
    assert gamma == pytest.approx(1.3, abs=1e-4)
    assert q_min < 1e-10


def test_minimize_improves_start():
    rng = RngStream(66)
    y = Series(rng.standard_normal(1000))
    lam = draw_lambda(y.autocovariance(0), "fixed")
    ghat = empirical_cf_vector(y, lam)
    gplus = pseudo_inverse(2.0 * math.pi * spectral_density_at_zero(y, lam))
    start_q = q_form(ghat, gaussian_cf_vector(y.mean(), y.autocovariance(0), lam), gplus)
    _, _, q_min = minimize_q(y, lam)
    assert q_min <= start_q + 1e-15


def _grid_minimum(ghat, gplus, lam, mu0, gamma0, points=200):
    # independent evaluation of the quadratic form over a parameter grid
    sd = math.sqrt(gamma0)
    nus = np.linspace(mu0 - 3.0 * sd, mu0 + 3.0 * sd, points)
    rhos = np.linspace(gamma0 / 4.0, 4.0 * gamma0, points)
    lv = lam.values
    amp = np.exp(-0.5 * np.outer(rhos, lv**2))          # (rho, N)
    coss = np.cos(np.outer(nus, lv))                    # (nu, N)
    sins = np.sin(np.outer(nus, lv))
    model = np.empty((points, points, 2 * lv.size))     # [nu, rho, component]
    for j in range(lv.size):
        model[:, :, 2 * j] = coss[:, None, j] * amp[None, :, j]
        model[:, :, 2 * j + 1] = sins[:, None, j] * amp[None, :, j]
    diff = ghat[None, None, :] - model
    q = np.einsum("ijk,kl,ijl->ij", diff, gplus, diff)
    return float(q.min())


def test_minimize_beats_grid():
    rng = RngStream(67)
    for _ in range(3):
        y = Series(rng.standard_normal(150))
        lam = draw_lambda(y.autocovariance(0), "fixed")
        ghat = empirical_cf_vector(y, lam)
        gplus = pseudo_inverse(2.0 * math.pi * spectral_density_at_zero(y, lam))
        _, _, q_min = minimize_q(y, lam)
        grid_min = _grid_minimum(ghat, gplus, lam, y.mean(), y.autocovariance(0))
        assert q_min <= grid_min + 1e-6


def test_fit_raises_on_non_finite_objective():
    lam = _lam([1.0, 2.0])
    bad = np.full((4, 4), np.inf)
    with pytest.raises(NumericalError):
        _fit_gaussian_cf(np.zeros(4), bad, lam, 0.0, 1.0)


# -- full test -------------------------------------------------------------------------

def test_epps_guards():
    with pytest.raises(ValueError):
        epps_test(Series([1.0, 2.0, 3.0]))
    with pytest.raises(DegenerateSeriesError):
        epps_test(Series([3.0] * 20))


def test_epps_result_fields_consistent():
    rng = RngStream(68)
    y = Series(rng.standard_normal(400))
    res = epps_test(y, "fixed")
    assert res.df == 2
    assert res.statistic >= 0.0
    assert 0.0 <= res.p_value <= 1.0
    d = res.as_dict()
    assert d["mode"] == "fixed" and len(d["lambda"]) == 2


def test_epps_random_mode_needs_rng():
    y = Series(RngStream(69).standard_normal(100))
    with pytest.raises(ValueError):
        epps_test(y, "random", None)
    res = epps_test(y, "random", RngStream(70))
    assert 0.0 <= res.p_value <= 1.0


def test_epps_location_shift_consistency():
    # fixed frequencies depend only on the (shift-invariant) variance, and the
    # quadratic form is equivariant under the induced rotation
    rng = RngStream(71)
    y = rng.standard_normal(300)
    res0 = epps_test(Series(y), "fixed")
    res1 = epps_test(Series(y + 5.0), "fixed")
    assert res1.statistic == pytest.approx(res0.statistic, abs=1e-6)
    assert res1.mu_n == pytest.approx(res0.mu_n + 5.0, abs=1e-4)


def test_epps_lognormal_power():
    import rpgauss as rg
    rng = RngStream(72)
    proc = rg.Ar1Process(q=0.0, innovation=rg.InnovationFamily.STD_LOGNORMAL,
                         n=100, past=1000)
    res = rg.rejection_rate(proc, "E", reps=500, alpha=0.05, rng=rng)
    assert res.rate >= 0.90


def test_epps_null_p_values_uniform():
    import rpgauss as rg
    rng = RngStream(73)
    proc = rg.Ar1Process(q=0.0, innovation=rg.InnovationFamily.STD_NORMAL,
                         n=1000, past=1000)
    ps = []
    for i in range(500):
        stream = rng.for_replication(i)
        ps.append(epps_test(rg.simulate_ar1(proc, stream), "fixed").p_value)
    ks = ks_distance(ps, lambda u: min(max(u, 0.0), 1.0))
    assert ks < 1.6276 / math.sqrt(500)
