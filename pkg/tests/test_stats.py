import numpy as np
import pytest

from trawlsim import (PoissonDifference, SeriesBudget, TrawlSpec,
                      ValidationError, WindowError, ecf, ecf_distance_test,
                      fit_index_from_curve, increment_dependence, sample_sas,
                      selfsim_index_fit, simulate_finite_activity_yt,
                      simulate_limit_y, simulate_stable_levy,
                      stability_index_fit)
from trawlsim._util import path_rng


def test_ecf_of_zeros_is_one():
    curve = ecf(np.zeros(500), np.array([0.0, 0.5, 1.0]))
    np.testing.assert_allclose(curve.values, 1.0)
    assert curve.std_errors[0] == 0.0


def test_ecf_values_in_unit_disk_and_symmetric_sample():
    rng = path_rng(1, 0)
    x = rng.standard_normal(5000)
    x = np.concatenate([x, -x])  # exactly symmetric
    curve = ecf(x, np.geomspace(0.1, 5.0, 9))
    assert np.all(np.abs(curve.values) <= 1.0 + 1e-12)
    assert np.all(np.abs(curve.values.imag) <= 3 * curve.std_errors + 1e-12)


def test_ecf_sample_size_guards():
    with pytest.raises(ValidationError):
        ecf(np.array([]), np.array([1.0]))
    with pytest.raises(ValidationError):
        ecf(np.ones(50), np.array([1.0]))


def test_ecf_matches_stable_generator():
    x = sample_sas(path_rng(2, 0), 1.5, 100_000)
    grid = np.array([0.5, 1.0, 2.0])
    curve = ecf(x, grid)
    for k, th in enumerate(grid):
        err = abs(curve.values[k] - np.exp(-th ** 1.5))
        assert err <= 3 * curve.std_errors[k]


def test_index_fit_noiseless_exact():
    th = np.geomspace(0.2, 2.0, 10)
    fit = fit_index_from_curve(th, np.exp(-th ** 1.5))
    assert fit.index_hat == pytest.approx(1.5, abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_index_fit_window_guards():
    th = np.geomspace(0.2, 2.0, 3)
    with pytest.raises(WindowError):
        fit_index_from_curve(th, np.exp(-th ** 1.5))
    with pytest.raises(WindowError):
        fit_index_from_curve(np.geomspace(0.2, 2.0, 6), np.ones(6) * 1.0)


def test_stability_fit_on_stable_draws():
    x = sample_sas(path_rng(3, 0), 1.5, 100_000)
    fit = stability_index_fit(x)
    assert 1.45 <= fit.index_hat <= 1.55
    assert fit.r_squared > 0.99


def test_stability_fit_scale_free():
    x = sample_sas(path_rng(4, 0), 1.2, 50_000)
    f1 = stability_index_fit(x)
    f2 = stability_index_fit(321.0 * x)
    assert f2.index_hat == pytest.approx(f1.index_hat, abs=1e-9)
    assert f2.intercept != pytest.approx(f1.intercept, abs=1e-3)


def test_stability_fit_window_error_on_degenerate_sample():
    with pytest.raises((WindowError, ValidationError)):
        stability_index_fit(np.ones(1000))


def test_stability_fit_explicit_bad_window():
    x = sample_sas(path_rng(5, 0), 1.5, 10_000)
    with pytest.raises(WindowError) as info:
        stability_index_fit(x, theta_window=(1e-8, 1e-7))
    assert info.value.suggested is not None


def test_selfsim_exact_on_constructed_scaling():
    base = sample_sas(path_rng(6, 0), 1.8, 20_000)
    samples = [base, 2 ** 0.75 * base, 4 ** 0.75 * base]
    fit = selfsim_index_fit(samples, [1.0, 2.0, 4.0])
    assert fit.index_hat == pytest.approx(0.75, abs=2e-3)


def test_selfsim_needs_three_scales():
    base = sample_sas(path_rng(7, 0), 1.8, 1000)
    with pytest.raises(ValidationError):
        selfsim_index_fit([base, base], [1.0, 2.0])


def test_selfsim_on_stable_levy_paths():
    ens = simulate_stable_levy([1.0, 2.0, 4.0], 1.2, 1.0, 4000, 77)
    fit = selfsim_index_fit([ens.values_at(t) for t in (1.0, 2.0, 4.0)],
                            [1.0, 2.0, 4.0])
    assert fit.index_hat == pytest.approx(1.0 / 1.2, abs=0.05)


def test_dependence_zero_for_levy_paths():
    ens = simulate_stable_levy([1.0, 2.0], 1.5, 1.0, 4000, 8)
    dep = increment_dependence(ens, (0.0, 1.0), (1.0, 2.0))
    assert dep.z_score <= 3.0


def test_dependence_detected_for_limit_process():
    ens = simulate_limit_y([1.0, 2.0], 1.8, 0.5, SeriesBudget(1200),
                           6000, 2024)
    dep = increment_dependence(ens, (0.0, 1.0), (1.0, 2.0))
    assert dep.z_score > 3.0


def test_dependence_vanishes_for_light_base_at_large_horizon():
    trawl = TrawlSpec.canonical(1.0, 0.5)
    T = 1e4
    ens = simulate_finite_activity_yt([1.0, 2.0], T, trawl,
                                      PoissonDifference(1.0), T ** (2 / 3),
                                      3000, 15)
    dep = increment_dependence(ens, (0.0, 1.0), (1.0, 2.0))
    assert dep.z_score <= 3.0


def test_dependence_interval_validation():
    ens = simulate_stable_levy([1.0, 2.0], 1.5, 1.0, 200, 9)
    with pytest.raises(ValidationError):
        increment_dependence(ens, (0.0, 2.0), (1.0, 2.0))


def test_ecf_distance_test_power_and_level():
    rng = path_rng(10, 0)
    a = sample_sas(rng, 1.5, 3000)
    b = sample_sas(rng, 1.5, 3000)
    _, p_same = ecf_distance_test(a, b, seed=1)
    assert p_same >= 0.01
    _, p_diff = ecf_distance_test(a, 1.5 * b, seed=1)
    assert p_diff < 0.01
