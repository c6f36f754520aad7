"""Unit tests for the validation statistics."""

import math

import numpy as np
import pytest

from ltfsm import (
    empirical_cf,
    fbm_path,
    fit_scale_by_cf,
    holder_exponent_estimate,
    ks_distance,
    linreg_r2,
)
from ltfsm.oracle import sample_stable_oracle
from ltfsm.streams import RandomStream


# -- least squares -----------------------------------------------------------------


def test_linreg_hand_case():
    slope, intercept, r2 = linreg_r2([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 1.0, 2.0])
    assert slope == pytest.approx(0.6, rel=1e-14)
    assert intercept == pytest.approx(0.1, rel=1e-13)
    assert r2 == pytest.approx(0.9, rel=1e-13)


def test_linreg_perfect_and_constant_responses():
    x = np.array([0.0, 1.0, 2.0, 5.0])
    slope, intercept, r2 = linreg_r2(x, 3.0 * x - 1.0)
    assert slope == pytest.approx(3.0, rel=1e-13)
    assert intercept == pytest.approx(-1.0, rel=1e-12)
    assert r2 == pytest.approx(1.0, abs=1e-14)
    slope, intercept, r2 = linreg_r2(x, np.full(4, 2.5))
    assert slope == 0.0
    assert intercept == 2.5
    assert r2 == 1.0


def test_linreg_r2_is_affine_invariant():
    x = np.array([0.1, 0.7, 1.3, 2.0, 2.2])
    y = np.array([1.0, 0.4, 0.9, 1.7, 1.2])
    _, _, base = linreg_r2(x, y)
    _, _, moved = linreg_r2(4.0 * x - 3.0, 0.5 * y + 11.0)
    assert moved == pytest.approx(base, rel=1e-12)


def test_linreg_domain():
    with pytest.raises(ValueError):
        linreg_r2([1.0, 1.0, 1.0], [0.0, 1.0, 2.0])  # constant regressor
    with pytest.raises(ValueError):
        linreg_r2([1.0], [2.0])
    with pytest.raises(ValueError):
        linreg_r2([1.0, 2.0], [1.0, 2.0, 3.0])


# -- empirical characteristic function --------------------------------------------------


def test_empirical_cf_two_point_hand_case():
    est = empirical_cf(np.array([1.0, 2.0]), math.pi / 2.0)
    # cos: (0, -1), sin: (1, 0) -> mean (-1/2, 1/2), modulus sqrt(2)/2
    assert est.re[0] == pytest.approx(-0.5, rel=1e-14)
    assert est.im[0] == pytest.approx(0.5, rel=1e-14)
    assert est.modulus[0] == pytest.approx(math.sqrt(0.5), rel=1e-14)


def test_empirical_cf_matches_the_gaussian_law():
    g = RandomStream(77).gaussian(50000)
    est = empirical_cf(g, 1.0)
    assert abs(est.modulus[0] - math.exp(-0.5)) < 4.0 * est.stderr[0]
    assert est.modulus[0] <= 1.0 + 1e-15


def test_empirical_cf_stderr_has_unit_coverage():
    # the delta-method stderr should normalize the modulus error across
    # independent replications
    target = math.exp(-0.5)
    z = []
    base = RandomStream(31)
    for j in range(200):
        g = base.substream(j).gaussian(500)
        est = empirical_cf(g, 1.0)
        z.append((est.modulus[0] - target) / est.stderr[0])
    spread = np.std(z, ddof=1)
    assert 0.75 < spread < 1.35
    assert abs(np.mean(z)) < 0.3


def test_empirical_cf_shapes_and_domain():
    samples = RandomStream(5).gaussian(300).reshape(100, 3)
    est = empirical_cf(samples, 0.7)
    assert est.re.shape == est.im.shape == est.stderr.shape == (3,)
    assert est.u == 0.7
    with pytest.raises(ValueError):
        empirical_cf(np.array([1.0]), 1.0)
    with pytest.raises(ValueError):
        empirical_cf(np.zeros((2, 2, 2)), 1.0)


# -- Kolmogorov-Smirnov -------------------------------------------------------------------


def test_ks_distance_hand_case():
    # pooled CDF gaps of {1,2,3} vs {1.5,2.5} peak at 1/3
    assert ks_distance([1.0, 2.0, 3.0], [1.5, 2.5]) == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_ks_distance_extremes_symmetry_and_invariance():
    a = RandomStream(1).gaussian(500)
    b = RandomStream(2).gaussian(800)
    assert ks_distance(a, a) == 0.0
    assert ks_distance(a, a + 100.0) == 1.0
    assert ks_distance(a, b) == pytest.approx(ks_distance(b, a), rel=1e-14)
    # invariant under strictly increasing transforms
    assert ks_distance(np.exp(a), np.exp(b)) == pytest.approx(
        ks_distance(a, b), rel=1e-12
    )
    with pytest.raises(ValueError):
        ks_distance([], [1.0])


def test_ks_distance_shrinks_for_equal_laws():
    a = RandomStream(3).gaussian(4000)
    b = RandomStream(4).gaussian(4000)
    assert ks_distance(a, b) < 0.05


# -- scale fitting -----------------------------------------------------------------------


def test_fit_scale_recovers_a_known_scaling():
    x = 2.0 * sample_stable_oracle(1.2, RandomStream(12), 100000)
    assert abs(fit_scale_by_cf(x, 1.2) - 2.0) < 0.1
    g = math.sqrt(2.0) * RandomStream(13).gaussian(100000)
    assert abs(fit_scale_by_cf(g, 2.0) - 1.0) < 0.05


def test_fit_scale_accepts_a_custom_frequency_grid():
    x = sample_stable_oracle(1.0, RandomStream(14), 50000)
    default = fit_scale_by_cf(x, 1.0)
    custom = fit_scale_by_cf(x, 1.0, u_grid=np.array([0.3, 0.6, 0.9]))
    assert abs(default - 1.0) < 0.1
    assert abs(custom - 1.0) < 0.1


def test_fit_scale_domain():
    with pytest.raises(ValueError):
        fit_scale_by_cf([1.0], 1.0)
    with pytest.raises(ValueError):
        fit_scale_by_cf([1.0, 2.0], 2.5)
    with pytest.raises(ValueError):
        fit_scale_by_cf(np.zeros(100), 1.0)  # degenerate median
    with pytest.raises(ValueError):
        fit_scale_by_cf([1.0, 2.0], 1.0, u_grid=np.array([0.0, 1.0]))


# -- path-regularity diagnostic --------------------------------------------------------------


def test_holder_diagnostic_tracks_the_hurst_index():
    for hurst in (0.3, 0.5, 0.7):
        path = fbm_path(hurst, 1.0, 1024, RandomStream(21))
        est = holder_exponent_estimate(path.times, path.values)
        assert abs(est - hurst) < 0.15


def test_holder_diagnostic_is_exact_for_linear_drift():
    t = np.linspace(0.0, 1.0, 65)
    assert holder_exponent_estimate(t, 3.0 * t) == pytest.approx(1.0, rel=1e-9)


def test_holder_diagnostic_domain():
    t = np.linspace(0.0, 1.0, 65)
    with pytest.raises(ValueError):
        holder_exponent_estimate(t[:3], t[:3])
    with pytest.raises(ValueError):
        holder_exponent_estimate(t, np.zeros(65))  # constant path has no lags
