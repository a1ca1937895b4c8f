"""Symmetric Levy bases: jump measures, their exponents, and regime checks.

A homogeneous symmetric Levy base on the plane is determined by a symmetric
jump measure ``nu`` with ``int (1 ^ y^2) nu(dy) < inf``.  Its exponent is

    psi(theta) = int (1 - cos(theta y)) nu(dy),

so that ``E exp(i theta L(A)) = exp(-|A| psi(theta))`` for Borel sets A.
Three base kinds are supported:

* ``SymmetricStable(alpha)``     — psi(theta) = |theta|^alpha;
* ``PoissonDifference(lam, j)``  — nu = lam (delta_j + delta_-j),
  psi(theta) = 2 lam (1 - cos(j theta));
* ``DensityBased(h, ...)``       — nu(dy) = h(y) dy with symmetric h,
  psi evaluated by adaptive quadrature.

``classify_regime`` decides which long-time limit law applies for a given
trawl tail index gamma and reports the matching norming.
"""

from __future__ import annotations

import enum
import math
import warnings
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from ._errors import UnsupportedSpecError, ValidationError


@contextmanager
def _quiet():
    # pure-relative quadrature deliberately runs until roundoff; the
    # accompanying scipy notices are expected and checked downstream
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        yield

__all__ = [
    "LevyBasisSpec", "SymmetricStable", "PoissonDifference", "DensityBased",
    "LevyExponent", "split_exponent", "Regime", "Norming", "RegimeReport",
    "classify_regime", "verify_hypotheses", "stable_density_constant",
]


@lru_cache(maxsize=None)
def stable_density_constant(alpha):
    """The constant c with ``nu(dy) = c |y|^(-1-alpha) dy`` giving psi = |theta|^alpha.

    Computed numerically as ``1 / (2 int_0^inf (1 - cos v) v^(-1-alpha) dv)``
    rather than transcribed, and cached per alpha.
    """
    if not (0.0 < alpha < 2.0):
        raise ValidationError(f"stable index must lie in (0, 2), got {alpha}")
    with _quiet():
        head, _ = integrate.quad(
            lambda v: (1.0 - np.cos(v)) * v ** (-1.0 - alpha), 0.0, np.pi,
            limit=400, epsabs=0.0, epsrel=1e-13)
    # beyond pi: int (1 - cos v) v^(-1-a) = int v^(-1-a) - int cos(v) v^(-1-a)
    tail_one = np.pi ** (-alpha) / alpha
    tail_cos, _ = integrate.quad(lambda v: v ** (-1.0 - alpha), np.pi, np.inf,
                                 weight="cos", wvar=1.0, epsabs=1e-13)
    total = head + tail_one - tail_cos
    return 1.0 / (2.0 * total)


class LevyBasisSpec:
    """Base class for symmetric jump-measure specifications."""

    #: declared tail index of psi at infinity, if any
    alpha_at_infinity = None
    #: declared index of psi at zero, if any
    alpha_at_zero = None
    #: declared kappa with int_{|y|>=1} |y|^kappa nu(dy) < inf, if any
    moment_kappa = None

    @property
    def finite_activity(self):
        return math.isfinite(self.total_mass)

    def params(self):
        raise NotImplementedError


@dataclass(frozen=True)
class SymmetricStable(LevyBasisSpec):
    """psi(theta) = |theta|^alpha, nu(dy) = c_alpha |y|^(-1-alpha) dy."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ValidationError(
                f"stable index must lie in (0, 2), got {self.alpha}")

    @property
    def alpha_at_infinity(self):
        return self.alpha

    @property
    def alpha_at_zero(self):
        return self.alpha

    @property
    def total_mass(self):
        return math.inf

    def density(self, y):
        c = stable_density_constant(self.alpha)
        y = np.asarray(y, dtype=float)
        return c * np.abs(y) ** (-1.0 - self.alpha)

    def params(self):
        return {"kind": "stable", "alpha": self.alpha}


@dataclass(frozen=True)
class PoissonDifference(LevyBasisSpec):
    """Difference of two independent Poisson bases of rate ``intensity``.

    nu = intensity (delta_jump + delta_-jump).  ``intensity = 0`` is allowed
    and denotes the empty base (psi identically zero).
    """

    intensity: float
    jump: float = 1.0

    def __post_init__(self):
        if self.intensity < 0:
            raise ValidationError(f"intensity must be >= 0, got {self.intensity}")
        if self.jump <= 0:
            raise ValidationError(f"jump size must be positive, got {self.jump}")

    @property
    def total_mass(self):
        return 2.0 * self.intensity

    @property
    def moment_kappa(self):
        return 2.0

    def sample_marks(self, rng, n):
        signs = rng.integers(0, 2, size=n) * 2 - 1
        return self.jump * signs

    def params(self):
        return {"kind": "poisson_difference", "lambda": self.intensity,
                "jump": self.jump}


class DensityBased(LevyBasisSpec):
    """Jump measure with a symmetric density ``h`` on R \\ {0}.

    ``h`` must accept numpy arrays of positive arguments (symmetry is used to
    fold onto (0, inf)).  ``support`` restricts the measure to
    ``{lo <= |y| <= hi}``; a finite ``hi`` with integrable mass enables exact
    compound-Poisson simulation.  The Levy integrability condition
    ``int (1 ^ y^2) h < inf`` is verified at construction.
    """

    def __init__(self, h, support=(0.0, math.inf), *, alpha_at_infinity=None,
                 alpha_at_zero=None, moment_kappa=None, symmetry_check=True,
                 label="density"):
        self._h = h
        lo, hi = support
        if lo < 0 or hi <= lo:
            raise ValidationError(f"bad support {support}")
        self.support = (float(lo), float(hi))
        self.alpha_at_infinity = alpha_at_infinity
        self.alpha_at_zero = alpha_at_zero
        self.moment_kappa = moment_kappa
        self.label = label
        self._total_mass = None
        if symmetry_check:
            grid = np.geomspace(max(lo, 1e-8), min(hi, 1e8), 41)
            pos = np.asarray(h(grid), dtype=float)
            neg = np.asarray(h(-grid), dtype=float)
            if np.any(pos < 0):
                raise ValidationError("density must be nonnegative")
            bad = np.abs(pos - neg) > 1e-9 * np.maximum(pos, 1e-300)
            if np.any(bad):
                raise ValidationError("density must be symmetric: h(y) == h(-y)")
        self._check_levy_integrability()

    def density(self, y):
        y = np.abs(np.atleast_1d(np.asarray(y, dtype=float)))
        lo, hi = self.support
        inside = (y >= lo) & (y <= hi) & (y > 0)
        out = np.zeros_like(y)
        if np.any(inside):
            out[inside] = np.asarray(self._h(y[inside]), dtype=float)
        if out.size == 1:
            return float(out[0])
        return out

    def _check_levy_integrability(self):
        lo, hi = self.support
        a = max(lo, 0.0)
        if a < 1e-6 and hi > 1e-6:
            # local power of y^2 h(y) near zero must exceed -1
            y1, y2 = max(a, 1e-10), 1e-7
            h1, h2 = float(self.density(y1)), float(self.density(y2))
            if h1 > 0 and h2 > 0:
                power = 2.0 + math.log(h2 / h1) / math.log(y2 / y1)
                if power <= -1.0 + 1e-9:
                    raise ValidationError(
                        "int y^2 h(y) dy diverges near zero "
                        f"(local power {power - 2.0:.3g} of h)")
        with np.errstate(over="ignore", divide="ignore"), _quiet():
            small, _ = integrate.quad(
                lambda y: y * y * float(self.density(y)), a, min(1.0, hi),
                limit=200)
        if not math.isfinite(small) or small > 1e10:
            raise ValidationError("int y^2 h(y) dy diverges near zero")
        big = 0.0
        if hi > 1.0:
            big, _ = integrate.quad(lambda y: float(self.density(y)), 1.0, hi,
                                    limit=200)
        if not math.isfinite(big) or big > 1e12:
            raise ValidationError("int_{|y|>1} h(y) dy diverges")
        self._mass_above_one = 2.0 * big

    @property
    def total_mass(self):
        if self._total_mass is None:
            lo, hi = self.support
            diverges = False
            if lo < 1e-6 and hi > 1e-6:
                # mass is finite iff the local power of h near zero is > -1
                y1, y2 = max(lo, 1e-10), 1e-7
                h1, h2 = float(self.density(y1)), float(self.density(y2))
                if h1 > 0 and h2 > 0:
                    power = math.log(h2 / h1) / math.log(y2 / y1)
                    diverges = power <= -1.0 + 1e-9
            if diverges:
                self._total_mass = math.inf
            else:
                with np.errstate(over="ignore"), _quiet():
                    probe, _ = integrate.quad(
                        lambda y: float(self.density(y)), lo, min(1.0, hi),
                        limit=200)
                if not math.isfinite(probe) or probe > 1e12:
                    self._total_mass = math.inf
                else:
                    self._total_mass = 2.0 * probe + self._mass_above_one
        return self._total_mass

    def sample_marks(self, rng, n):
        table = self._mark_table()
        xs, cdf = table
        v = rng.random(n)
        mags = np.interp(v, cdf, xs)
        signs = rng.integers(0, 2, size=n) * 2 - 1
        return mags * signs

    @lru_cache(maxsize=None)
    def _mark_table(self):
        # inverse-CDF table for |mark| ~ 2 h on (lo, hi); requires finite mass
        mass = self.total_mass
        if not math.isfinite(mass) or mass <= 0:
            raise UnsupportedSpecError("mark sampling needs finite positive mass")
        lo, hi = self.support
        lo = max(lo, 1e-12)
        hi = min(hi, 1e12)
        xs = np.unique(np.concatenate([
            np.geomspace(lo, hi, 4001), [lo, hi]]))
        dens = self.density(xs)
        cdf = integrate.cumulative_trapezoid(dens, xs, initial=0.0)
        cdf /= cdf[-1]
        keep = np.concatenate([[True], np.diff(cdf) > 0])
        return xs[keep], cdf[keep]

    def params(self):
        lo, hi = self.support
        return {"kind": "density", "label": self.label,
                "support": [lo, hi if math.isfinite(hi) else "inf"]}


def _table_density(table):
    """Piecewise-linear density from a [[y, h(y)], ...] table (positive half)."""
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError("density table must be [[y, h(y)], ...]")
    ys = np.abs(arr[:, 0])
    hs = arr[:, 1]
    order = np.argsort(ys)
    ys, hs = ys[order], hs[order]
    if np.any(hs < 0):
        raise ValidationError("density table values must be nonnegative")
    if ys[0] <= 0:
        raise ValidationError("density table abscissae must be nonzero")

    def h(y):
        y = np.abs(np.asarray(y, dtype=float))
        return np.interp(y, ys, hs, left=0.0, right=0.0)

    return h, (float(ys[0]), float(ys[-1]))


def density_from_table(table, **meta):
    h, support = _table_density(table)
    return DensityBased(h, support=support, label="table", **meta)


class LevyExponent:
    """Evaluates psi for a :class:`LevyBasisSpec`.

    Closed forms are used for the stable and Poisson-difference kinds;
    density-based measures fall back to adaptive quadrature of
    ``2 int_0^inf (1 - cos(theta y)) h(y) dy`` with the oscillatory tail
    handled by a cosine-weighted rule, absolute error <= ``tol``.
    """

    def __init__(self, spec, tol=1e-9):
        self.spec = spec
        self.tol = float(tol)

    def __call__(self, theta):
        return self.psi(theta)

    def psi(self, theta):
        theta = np.asarray(theta, dtype=float)
        spec = self.spec
        if isinstance(spec, SymmetricStable):
            out = np.abs(theta) ** spec.alpha
        elif isinstance(spec, PoissonDifference):
            out = 2.0 * spec.intensity * (1.0 - np.cos(spec.jump * theta))
        else:
            out = np.vectorize(self._psi_quad, otypes=[float])(theta)
        if out.ndim == 0:
            return float(out)
        return out

    def _psi_quad(self, theta):
        # split the oscillatory integral at y = pi/theta; the sub-pi/theta
        # head and the monotone tail run at pure relative accuracy (psi can
        # be arbitrarily small near theta = 0), while the cancelling cosine
        # remainder gets an absolute budget scaled to the other pieces
        if theta == 0.0:
            return 0.0
        th = abs(float(theta))
        lo, hi = self.spec.support
        lo = max(lo, 0.0)
        f = lambda y: (1.0 - np.cos(th * y)) * float(self.spec.density(y))
        split = min(np.pi / th, hi)
        head = 0.0
        if split > lo:
            with _quiet():
                head, _ = integrate.quad(f, lo, split, limit=400, epsabs=0.0,
                                         epsrel=1e-10)
        rest = 0.0
        if hi > split:
            ones = self._tail_mass(split, hi)
            scale = head + ones
            eps_osc = max(1e-14, min(self.tol / 4.0, 1e-4 * scale),
                          1e-10 * scale)
            cosv = self._cos_piece(th, split, hi, eps_osc)
            if not math.isfinite(cosv) or abs(cosv) > 1.0001 * ones + 1e-12:
                # the oscillatory rule failed at this tolerance; |cos part|
                # can never exceed the plain tail mass, so retry loosely
                cosv = self._cos_piece(th, split, hi,
                                       max(1e-8, 1e-8 * scale))
            if not math.isfinite(cosv) or abs(cosv) > 1.0001 * ones + 1e-12:
                raise ValidationError(
                    "oscillatory psi quadrature failed; check the density")
            rest = ones - cosv
        total = head + rest
        if not math.isfinite(total):
            raise ValidationError("psi quadrature diverged; check the density")
        return 2.0 * total

    def _tail_mass(self, split, hi):
        # int_split^hi h: mapped onto the unit interval (y = split/x) when
        # the range is unbounded, which keeps relative accuracy even when
        # split is enormous and the integrand is denormal-small
        with _quiet():
            if math.isfinite(hi):
                val, _ = integrate.quad(
                    lambda y: float(self.spec.density(y)), split, hi,
                    limit=400, epsabs=0.0, epsrel=1e-10)
                return val
            val, _ = integrate.quad(
                lambda x: float(self.spec.density(split / x)) * split
                / (x * x), 0.0, 1.0, limit=400, epsabs=0.0, epsrel=1e-10)
            return val

    def _cos_piece(self, th, split, hi, epsabs):
        if math.isfinite(hi):
            val, _ = integrate.quad(
                lambda y: np.cos(th * y) * float(self.spec.density(y)),
                split, hi, limit=400, epsabs=epsabs)
        else:
            val, _ = integrate.quad(
                lambda y: float(self.spec.density(y)), split, np.inf,
                weight="cos", wvar=th, epsabs=epsabs)
        return val

    @property
    def oscillation_frequency(self):
        """Characteristic frequency of psi's oscillation (0 when monotone envelope)."""
        spec = self.spec
        if isinstance(spec, PoissonDifference):
            return spec.jump
        if isinstance(spec, DensityBased):
            hi = spec.support[1]
            return hi if math.isfinite(hi) else 0.0
        return 0.0

    def params(self):
        return self.spec.params()


def split_exponent(exponent, threshold=1.0):
    """Split psi into the parts carried by jumps below/above ``threshold``.

    Returns ``(psi_small, psi_large)`` as two :class:`LevyExponent` objects
    built from nu restricted to {|y| < threshold} and {|y| >= threshold};
    their sum is psi pointwise.
    """
    if threshold <= 0:
        raise ValidationError("threshold must be positive")
    spec = exponent.spec
    tol = exponent.tol
    empty = LevyExponent(PoissonDifference(0.0), tol=tol)
    if isinstance(spec, PoissonDifference):
        part = LevyExponent(spec, tol=tol)
        if spec.jump < threshold:
            return part, empty
        return empty, part
    if isinstance(spec, SymmetricStable):
        if math.isinf(threshold):
            return LevyExponent(spec, tol=tol), empty
        c = stable_density_constant(spec.alpha)
        a = spec.alpha

        def h(y):
            y = np.abs(np.asarray(y, dtype=float))
            return c * y ** (-1.0 - a)

        small = DensityBased(h, support=(0.0, threshold), symmetry_check=False,
                             alpha_at_zero=a, label=f"stable|y|<{threshold:g}")
        large = DensityBased(h, support=(threshold, math.inf),
                             symmetry_check=False, alpha_at_infinity=a,
                             label=f"stable|y|>={threshold:g}")
        return LevyExponent(small, tol=tol), LevyExponent(large, tol=tol)
    if isinstance(spec, DensityBased):
        lo, hi = spec.support
        if threshold <= lo:
            return empty, LevyExponent(spec, tol=tol)
        if threshold >= hi:
            return LevyExponent(spec, tol=tol), empty
        small = DensityBased(spec._h, support=(lo, threshold),
                             symmetry_check=False, label=spec.label + "|small")
        large = DensityBased(spec._h, support=(threshold, hi),
                             symmetry_check=False, label=spec.label + "|large")
        return LevyExponent(small, tol=tol), LevyExponent(large, tol=tol)
    raise UnsupportedSpecError(f"cannot split {type(spec).__name__}")


# ---------------------------------------------------------------------------
# Regime classification
# ---------------------------------------------------------------------------

class Regime(str, enum.Enum):
    """Which long-time limit law the integrated process obeys."""

    #: tail-dominated: self-similar stable limit with dependent increments
    DEPENDENT_STABLE = "dependent_stable"
    #: light base: stable Levy limit with index 1 + gamma set by the trawl
    TRAWL_LEVY = "trawl_levy"
    #: small-jump-dominated: stable Levy limit with the base's index at zero
    BASE_LEVY = "base_levy"
    #: boundary case alpha = 1 + gamma with logarithmic norming correction
    CRITICAL_LOG = "critical_log"


@dataclass(frozen=True)
class Norming(object):
    """``F_T = T**power * (ln T)**log_power``."""

    power: float
    log_power: float = 0.0

    def __call__(self, T):
        T = np.asarray(T, dtype=float)
        out = T ** self.power
        if self.log_power != 0.0:
            out = out * np.log(T) ** self.log_power
        if out.ndim == 0:
            return float(out)
        return out

    @property
    def label(self):
        if self.log_power == 0.0:
            return f"T^{self.power:.6g}"
        return f"(T^{self.power:.6g})*(lnT)^{self.log_power:.6g}"


@dataclass(frozen=True)
class RegimeReport:
    """Numerical verdict on which limit law applies.

    The checks are grid-based diagnostics, not proofs; ``evidence`` carries
    the grids and observed ratios they were decided on.  ``regime`` is None
    when no hypothesis was satisfied (never a guess).
    """

    regime: object          # Regime | None
    gamma: float
    norming: object         # Norming | None
    limit_index: float      # stability index of the limit law (nan if none)
    hurst: float            # 1 - gamma/alpha in the dependent regime, else nan
    constants: dict
    evidence: dict

    @property
    def classified(self):
        return self.regime is not None

    def to_json_dict(self):
        return {
            "regime": self.regime.value if self.regime else None,
            "gamma": self.gamma,
            "norming_power": self.norming.power if self.norming else None,
            "norming_log_power": self.norming.log_power if self.norming else None,
            "norming_label": self.norming.label if self.norming else None,
            "limit_index": self.limit_index,
            "hurst": None if math.isnan(self.hurst) else self.hurst,
            "constants": self.constants,
            "evidence": self.evidence,
        }


def _power_fit(thetas, values):
    """Least-squares slope/level of log(values) against log(thetas)."""
    x = np.log(thetas)
    y = np.log(values)
    slope, level = np.polyfit(x, y, 1)
    resid = y - (slope * x + level)
    return float(slope), float(np.exp(level)), float(np.max(np.abs(resid)))


def _index_estimates(psi):
    """Slope of psi on log grids near zero and infinity, with stability flags."""
    small = np.geomspace(1e-6, 1e-3, 13)
    large = np.geomspace(1e1, 1e4, 13)
    ps = np.asarray(psi(small))
    pl = np.asarray(psi(large))
    out = {}
    if np.all(ps > 0):
        s0, _, r0 = _power_fit(small, ps)
        out["zero"] = (s0, ps[-1] / small[-1] ** s0, r0)
    if np.all(pl > 0):
        s1, _, r1 = _power_fit(large, pl)
        out["inf"] = (s1, pl[-1] / large[-1] ** s1, r1)
    return out


def classify_regime(spec, gamma, tol=1e-9):
    """Decide which limit law applies for the base ``spec`` and trawl index gamma.

    Returns a :class:`RegimeReport`; ``report.regime is None`` means no
    hypothesis could be verified on the test grids.
    """
    if not (0.0 < gamma < 1.0):
        raise ValidationError(f"gamma must lie in (0, 1), got {gamma}")
    one_g = 1.0 + gamma
    evidence = {"gamma": gamma}

    if isinstance(spec, SymmetricStable):
        a = spec.alpha
        evidence["alpha"] = a
        if abs(a - one_g) <= 1e-12:
            return RegimeReport(Regime.CRITICAL_LOG, gamma,
                                Norming(1.0 / a, 1.0 / a), a, math.nan,
                                {"C_alpha": 1.0}, evidence)
        if a > one_g:
            return RegimeReport(Regime.DEPENDENT_STABLE, gamma,
                                Norming((a - gamma) / a), a, 1.0 - gamma / a,
                                {"C_psi": 1.0}, evidence)
        return RegimeReport(Regime.BASE_LEVY, gamma, Norming(1.0 / a), a,
                            math.nan, {"C_alpha": 1.0}, evidence)

    if isinstance(spec, PoissonDifference):
        # psi <= C (|u|^2 ^ |u|^0-ish): bounded with quadratic behaviour at 0
        evidence["psi_bound"] = "2*lam*(1-cos(j u)) <= min(lam j^2 u^2, 4 lam)"
        return RegimeReport(Regime.TRAWL_LEVY, gamma, Norming(1.0 / one_g),
                            one_g, math.nan, {}, evidence)

    exponent = LevyExponent(spec, tol=tol)
    est = _index_estimates(exponent.psi)
    evidence["index_estimates"] = {
        k: {"slope": v[0], "level": float(v[1]), "log_resid": v[2]}
        for k, v in est.items()}

    # declared metadata wins over grid estimates (a table or truncated
    # density may only approximate the measure the user is asserting);
    # a finite measure has a bounded exponent, i.e. tail growth index 0
    slope_inf = spec.alpha_at_infinity
    if slope_inf is None:
        if spec.finite_activity:
            slope_inf = 0.0
        elif "inf" in est and est["inf"][2] < 0.15:
            slope_inf = est["inf"][0]
    slope_zero = spec.alpha_at_zero
    if slope_zero is None and math.isfinite(spec.support[1]):
        # compactly supported jumps: psi(x) ~ x^2 int y^2 nu / 2 near zero
        slope_zero = 2.0
    if slope_zero is None and "zero" in est and est["zero"][2] < 0.05:
        slope_zero = est["zero"][0]
    evidence["alpha_at_infinity"] = slope_inf
    evidence["alpha_at_zero"] = slope_zero

    # tail-dominated limit: psi ~ C_psi |x|^alpha at infinity with alpha > 1+gamma,
    # plus a finite moment of order above 1+gamma for the big jumps
    if slope_inf is not None and one_g < slope_inf < 2.0:
        kappa = spec.moment_kappa
        if kappa is None:
            kappa = 0.5 * (one_g + min(2.0, slope_inf))
            mom, _ = integrate.quad(
                lambda y: y ** kappa * float(spec.density(y)), 1.0, np.inf,
                limit=200)
            evidence["tail_moment"] = {"kappa": kappa, "value": 2.0 * mom}
            moment_ok = math.isfinite(mom) and mom < 1e10
        else:
            moment_ok = kappa > one_g
        if moment_ok:
            c_psi = float(np.asarray(exponent.psi(1e4)) / 1e4 ** slope_inf)
            return RegimeReport(Regime.DEPENDENT_STABLE, gamma,
                                Norming((slope_inf - gamma) / slope_inf),
                                slope_inf, 1.0 - gamma / slope_inf,
                                {"C_psi": c_psi}, evidence)

    tail_light = slope_inf is not None and slope_inf < one_g

    # light-base limit: psi <= C(|u|^kappa ^ |u|^alpha) with kappa > 1+gamma > alpha
    if slope_zero is not None and slope_zero > one_g:
        if tail_light:
            return RegimeReport(Regime.TRAWL_LEVY, gamma, Norming(1.0 / one_g),
                                one_g, math.nan, {}, evidence)

    # small-jump-dominated limit: psi ~ C_alpha |x|^alpha0 at zero with
    # alpha0 < 1+gamma and psi <= C (1 v |u|^kappa) for some kappa < 1+gamma
    if slope_zero is not None and 0.0 < slope_zero < one_g:
        if tail_light:
            theta_probe = 1e-4
            c_alpha = float(np.asarray(exponent.psi(theta_probe))
                            / theta_probe ** slope_zero)
            return RegimeReport(Regime.BASE_LEVY, gamma,
                                Norming(1.0 / slope_zero), slope_zero,
                                math.nan, {"C_alpha": c_alpha}, evidence)

    return RegimeReport(None, gamma, None, math.nan, math.nan, {}, evidence)


# the operation name used throughout the docs
verify_hypotheses = classify_regime
