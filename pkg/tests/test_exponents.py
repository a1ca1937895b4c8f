import numpy as np
import pytest
from scipy.special import beta as beta_fn
from scipy.special import gamma as gamma_fn

from trawlsim import (LevyExponent, PoissonDifference, Regime,
                      SymmetricStable, TimeCombo, TrawlSpec, ValidationError,
                      convergence_diagnostic, integrated_exponent,
                      kernel_moment, limit_exponent)


def closed_kernel_moment(kappa, gamma):
    """Independent oracle: exact r-section then elementary u-integrals.

    int_0^{t+u} overlap(1,r,u)^k dr = 2 m^(k+1)/(k+1) + (M - m) m^k with
    m = min(1, u); integrating the two u-ranges term by term gives the
    closed form below.
    """
    k, g = kappa, gamma
    return (2.0 / ((k + 1) * (k - g)) + 1.0 / (k - 1 - g) - 1.0 / (k - g)
            + 2.0 / ((k + 1) * (1 + g)) + 1.0 / g - 1.0 / (1 + g))


CANONICAL = TrawlSpec.canonical(1.0, 0.5)
UNIT = TimeCombo.single(1.0, 1.0)


def test_kernel_moment_zero_horizon():
    assert kernel_moment(1.8, 0.5, 0.0) == 0.0


def test_kernel_moment_against_closed_form():
    # frozen values of the oracle: J(1.8,0.5,1) = 64/13, J(2,0.5,1) = 32/9
    assert closed_kernel_moment(1.8, 0.5) == pytest.approx(64.0 / 13.0)
    assert closed_kernel_moment(2.0, 0.5) == pytest.approx(32.0 / 9.0)
    for kappa, gamma in [(1.8, 0.5), (2.0, 0.5), (1.6, 0.3)]:
        want = closed_kernel_moment(kappa, gamma)
        assert kernel_moment(kappa, gamma, 1.0) == pytest.approx(want,
                                                                 rel=1e-8)


def test_kernel_moment_scaling_law():
    J1 = kernel_moment(2.0, 0.5, 1.0)
    assert kernel_moment(2.0, 0.5, 2.0) / J1 == pytest.approx(2.0 ** 1.5,
                                                              rel=1e-4)
    for t in (0.5, 4.0):
        want = t ** 1.5 * J1
        assert kernel_moment(2.0, 0.5, t) == pytest.approx(want, rel=1e-4)


def test_kernel_moment_dual_strategies_agree():
    for kappa, gamma, t in [(1.8, 0.5, 1.0), (1.6, 0.3, 2.0)]:
        a = kernel_moment(kappa, gamma, t, method="adaptive")
        b = kernel_moment(kappa, gamma, t, method="separated")
        assert a == pytest.approx(b, rel=1e-6)


def test_kernel_moment_divergence_error():
    with pytest.raises(ValidationError, match="diverges"):
        kernel_moment(1.4, 0.5, 1.0)
    with pytest.raises(ValidationError, match="diverges"):
        kernel_moment(1.5, 0.5, 1.0)


def test_integrated_exponent_zero_base():
    psi0 = LevyExponent(PoissonDifference(0.0))
    assert integrated_exponent(UNIT, CANONICAL, psi0, 10.0, 3.0) == 0.0


def test_integrated_exponent_stable_homogeneity():
    lev = LevyExponent(SymmetricStable(1.8))
    F = 25.0
    I1 = integrated_exponent(UNIT, CANONICAL, lev, 100.0, F)
    I2 = integrated_exponent(UNIT, CANONICAL, lev, 100.0, 2 * F)
    assert I2 == pytest.approx(2.0 ** (-1.8) * I1, rel=1e-9)


def test_integrated_exponent_tail_split_invariance():
    # moving the analytic u-tail further out must not change the value
    lev = LevyExponent(PoissonDifference(1.0))
    T, F = 50.0, 50.0 ** (2.0 / 3.0)
    base = integrated_exponent(UNIT, CANONICAL, lev, T, F, tol=1e-9)
    moved = integrated_exponent(UNIT, CANONICAL, lev, T, F, tol=1e-9,
                                u_split=2 * T)
    assert moved == pytest.approx(base, abs=1e-8)


def test_integrated_exponent_argument_validation():
    lev = LevyExponent(SymmetricStable(1.8))
    with pytest.raises(ValidationError):
        integrated_exponent(UNIT, CANONICAL, lev, 0.5, 1.0)
    with pytest.raises(ValidationError):
        integrated_exponent(UNIT, CANONICAL, lev, 10.0, 0.0)


def test_limit_exponent_zero_combo():
    zero = TimeCombo.single(0.0, 1.0)
    lev = LevyExponent(PoissonDifference(1.0))
    out = limit_exponent(Regime.TRAWL_LEVY, zero, CANONICAL, lev)
    assert out.value == 0.0


def test_limit_exponent_light_base_value():
    # C_g * int_0^inf 2(1-cos u) u^(-2.5) du * int |a|^1.5, the u-integral
    # having the classical closed form -Gamma(-3/2) cos(3 pi/4)
    lev = LevyExponent(PoissonDifference(1.0))
    out = limit_exponent(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev)
    u_int = 2.0 * (-gamma_fn(-1.5) * np.cos(0.75 * np.pi))
    assert out.value == pytest.approx(1.5 * u_int, rel=1e-8)
    assert out.stable_index == pytest.approx(1.5)
    assert out.K == pytest.approx(out.value ** (1 / 1.5))


def test_limit_exponent_dependent_composition():
    lev = LevyExponent(SymmetricStable(1.8))
    out = limit_exponent(Regime.DEPENDENT_STABLE, UNIT, CANONICAL, lev)
    want = 1.0 * 1.5 * kernel_moment(1.8, 0.5, 1.0)
    assert out.value == pytest.approx(want, rel=1e-6)


def test_limit_exponent_small_jump_audit():
    lev = LevyExponent(SymmetricStable(1.2))
    out = limit_exponent(Regime.BASE_LEVY, UNIT, CANONICAL, lev)
    # C_alpha int u^alpha |g'| du * int |a|^alpha, with the u-moment a Beta
    # integral for the canonical trawl
    want = 1.5 * beta_fn(2.2, 0.3)
    assert out.audit is not None
    assert out.audit["small_argument_form"] == pytest.approx(want, rel=1e-6)
    assert out.audit["g0_form"] == pytest.approx(1.0)
    assert out.value == pytest.approx(want, rel=1e-6)


def test_limit_exponent_critical_value():
    lev = LevyExponent(SymmetricStable(1.5))
    out = limit_exponent(Regime.CRITICAL_LOG, UNIT, CANONICAL, lev)
    assert out.value == pytest.approx(1.5)
    combo2 = TimeCombo((1.0, 1.0), (1.0, 2.0))
    out2 = limit_exponent(Regime.CRITICAL_LOG, combo2, CANONICAL, lev)
    assert out2.value == pytest.approx(1.5 * (2.0 ** 1.5 + 1.0))


def test_limit_exponent_regime_mismatch():
    lev = LevyExponent(SymmetricStable(1.8))
    with pytest.raises(ValidationError, match="regime mismatch"):
        limit_exponent(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev)


def test_convergence_diagnostic_zero_base():
    psi0 = LevyExponent(PoissonDifference(0.0))
    rep = convergence_diagnostic(Regime.TRAWL_LEVY, UNIT, CANONICAL, psi0,
                                 [10.0, 100.0])
    assert all(v == 0.0 for v in rep.I_values)
    assert rep.limit_value == 0.0


def test_convergence_diagnostic_trend_light_base():
    lev = LevyExponent(PoissonDifference(1.0))
    rep = convergence_diagnostic(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev,
                                 [1e2, 1e3, 1e4])
    gaps = rep.rel_gaps
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert all(v >= 0 for v in rep.I_values)


def test_convergence_diagnostic_grid_validation():
    lev = LevyExponent(PoissonDifference(1.0))
    with pytest.raises(ValidationError):
        convergence_diagnostic(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev, [])
    with pytest.raises(ValidationError):
        convergence_diagnostic(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev,
                               [100.0, 10.0])
    with pytest.raises(ValidationError):
        convergence_diagnostic(Regime.TRAWL_LEVY, UNIT, CANONICAL, lev,
                               [0.5, 10.0])
