"""Estimators that turn ensembles into verdicts on the limit laws.

Everything is built on the empirical characteristic function (ECF): the
sample mean of ``exp(i theta x)``, whose modulus for a symmetric stable law
is ``exp(-c |theta|^beta)``.  A log(-log) regression of the ECF modulus
recovers the stability index beta; matched ECF distances across time scales
recover the self-similarity index; and the factorisation defect of the
joint ECF of two increments measures their dependence.

All estimators are deterministic functions of (sample, parameters); the
only randomness is the seeded bootstrap used for error bars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import ValidationError, WindowError
from ._util import path_rng

__all__ = ["EcfCurve", "IndexFit", "DependenceResult", "ecf",
           "stability_index_fit", "selfsim_index_fit", "increment_dependence",
           "ecf_distance_test", "fit_index_from_curve"]


@dataclass(frozen=True)
class EcfCurve:
    """Empirical characteristic function on a theta grid.

    ``values[k] = mean(exp(i theta_k x))``; ``std_errors[k]`` combines the
    sampling variance of the real and imaginary parts.
    """

    theta_grid: np.ndarray
    values: np.ndarray
    std_errors: np.ndarray
    n_samples: int

    def __post_init__(self):
        if np.any(np.abs(self.values) > 1.0 + 1e-12):
            raise ValidationError("ECF values must lie in the unit disk")

    def abs_values(self):
        return np.abs(self.values)


@dataclass(frozen=True)
class IndexFit:
    """A fitted scaling index with its regression diagnostics."""

    index_hat: float
    intercept: float
    r_squared: float
    theta_window: tuple

    def __post_init__(self):
        if not math.isfinite(self.index_hat):
            raise ValidationError("fitted index must be finite")


@dataclass(frozen=True)
class DependenceResult:
    """Factorisation defect of a joint ECF with its bootstrap error."""

    d_value: float
    std_error: float
    thetas: tuple

    @property
    def z_score(self):
        return self.d_value / self.std_error if self.std_error > 0 else math.inf


def ecf(sample, theta_grid):
    """Empirical characteristic function of a 1-d sample.

    Requires at least 100 observations (error bars are meaningless below).
    """
    sample = np.asarray(sample, dtype=float).ravel()
    if sample.size == 0:
        raise ValidationError("empty sample")
    if sample.size < 100:
        raise ValidationError(f"need >= 100 samples, got {sample.size}")
    theta_grid = np.asarray(theta_grid, dtype=float)
    n = sample.size
    values = np.empty(theta_grid.size, dtype=complex)
    errors = np.empty(theta_grid.size)
    for k, th in enumerate(theta_grid):
        if th == 0.0:
            values[k] = 1.0
            errors[k] = 0.0
            continue
        z = th * sample
        c, s = np.cos(z), np.sin(z)
        values[k] = complex(c.mean(), s.mean())
        errors[k] = math.sqrt((c.var() + s.var()) / n)
    return EcfCurve(theta_grid, values, errors, n)


def _scale_guess(sample):
    med = float(np.median(np.abs(sample)))
    if med <= 0:
        raise ValidationError("sample is degenerate at 0")
    return med


def _adaptive_window(sample, lo=0.35, hi=0.95, n_grid=17):
    """Bracket theta so the ECF modulus crosses [lo, hi] on a log grid.

    The window is a bias/conditioning trade-off: the log(-log) transform is
    best conditioned around moduli ~0.5, but for integrated-trawl marginals
    at desk-scale horizons the bounded-exponent saturation bends the curve
    exactly where the modulus drops below ~0.35, so the default window leans
    toward larger moduli.
    """
    scale = _scale_guess(sample)
    probes = np.geomspace(1e-3 / scale, 1e3 / scale, 121)
    mods = np.abs(ecf(sample, probes).values)
    usable = (mods > lo) & (mods < hi)
    if usable.sum() < 4:
        raise WindowError(
            "cannot find a theta window with moderate ECF modulus",
            suggested=None)
    th = probes[usable]
    return float(th.min()), float(th.max())


def fit_index_from_curve(theta, modulus):
    """Slope of log(-log |ecf|) against log theta (exact for exp(-c th^b))."""
    theta = np.asarray(theta, dtype=float)
    modulus = np.asarray(modulus, dtype=float)
    if theta.size < 4:
        raise WindowError("need at least 4 grid points in the window")
    if np.any(modulus <= 0.0) or np.any(modulus >= 1.0):
        raise WindowError("ECF modulus must lie strictly inside (0, 1)")
    x = np.log(theta)
    y = np.log(-np.log(modulus))
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return IndexFit(float(slope), float(intercept), r2,
                    (float(theta[0]), float(theta[-1])))


def stability_index_fit(sample, theta_window=None, n_grid=16):
    """Estimate beta from ``|ECF| = exp(-c |theta|^beta)``.

    The window defaults to the range where the ECF modulus lies in
    (0.35, 0.95); an explicit ``theta_window = (lo, hi)`` overrides it.
    The slope is invariant under positive rescaling of the sample (only the
    intercept moves).
    """
    sample = np.asarray(sample, dtype=float).ravel()
    if theta_window is None:
        theta_window = _adaptive_window(sample)
    lo, hi = theta_window
    if not (0 < lo < hi):
        raise ValidationError(f"bad theta window {theta_window}")
    grid = np.geomspace(lo, hi, n_grid)
    curve = ecf(sample, grid)
    mods = curve.abs_values()
    if np.any(mods >= 0.999) or np.any(mods <= 1e-3):
        suggestion = None
        try:
            suggestion = _adaptive_window(sample)
        except WindowError:
            pass
        raise WindowError(
            "ECF modulus leaves (0, 1) on this window; the log(-log) "
            "transform is ill-conditioned", suggested=suggestion)
    return fit_index_from_curve(grid, mods)


def _ecf_distance(sample_a, sample_b, thetas):
    """Weighted L2 distance between two ECFs (weights 1/SE^2)."""
    ca = ecf(sample_a, thetas)
    cb = ecf(sample_b, thetas)
    w = 1.0 / np.maximum(ca.std_errors ** 2 + cb.std_errors ** 2, 1e-300)
    return float(np.sum(w * np.abs(ca.values - cb.values) ** 2))


def selfsim_index_fit(samples, times, s_range=(0.05, 1.5), n_s=146):
    """Self-similarity index from marginals at a base time and its multiples.

    For each scale ``c = times[i]/times[0]`` the estimator finds s(c)
    minimising the ECF distance between ``samples[i]`` and
    ``c^s * samples[0]`` (parabolic refinement on a grid of s), then
    regresses ``s(c) log c`` on ``log c`` through the origin.
    """
    if len(samples) < 3 or len(samples) != len(times):
        raise ValidationError("need samples at >= 3 scales")
    times = [float(t) for t in times]
    if any(b <= a for a, b in zip(times, times[1:])) or times[0] <= 0:
        raise ValidationError("times must be positive and increasing")
    base = np.asarray(samples[0], dtype=float).ravel()

    s_grid = np.linspace(s_range[0], s_range[1], n_s)
    s_hats = []
    logs_c = []
    for sample, t in zip(samples[1:], times[1:]):
        sample = np.asarray(sample, dtype=float).ravel()
        c = t / times[0]
        scale = _scale_guess(sample)
        thetas = np.geomspace(0.1 / scale, 2.0 / scale, 9)
        dists = np.array([_ecf_distance(sample, c ** s * base, thetas)
                          for s in s_grid])
        j = int(np.argmin(dists))
        if 0 < j < n_s - 1:
            # parabolic refinement around the grid minimum
            d0, d1, d2 = dists[j - 1], dists[j], dists[j + 1]
            denom = d0 - 2 * d1 + d2
            shift = 0.5 * (d0 - d2) / denom if denom > 0 else 0.0
            s_hat = s_grid[j] + shift * (s_grid[1] - s_grid[0])
        else:
            s_hat = s_grid[j]
        s_hats.append(s_hat)
        logs_c.append(math.log(c))
    x = np.asarray(logs_c)
    y = np.asarray(s_hats) * x
    h = float(np.sum(x * y) / np.sum(x * x))
    fitted = h * x
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot <= 1e-30 else max(0.0, 1.0 - ss_res / ss_tot)
    window = (float(min(s_hats)), float(max(s_hats)))
    return IndexFit(h, 0.0, r2, window)


def ecf_distance_test(sample_a, sample_b, thetas=None, n_perm=500, seed=0):
    """Two-sample test: do the samples share a distribution?

    The statistic is the SE-weighted L2 distance between the two ECFs; the
    null distribution is generated by seeded permutations of the pooled
    sample.  Returns ``(statistic, p_value)``; small p rejects equality.
    """
    a = np.asarray(sample_a, dtype=float).ravel()
    b = np.asarray(sample_b, dtype=float).ravel()
    if thetas is None:
        scale = _scale_guess(np.concatenate([a, b]))
        thetas = np.geomspace(0.1 / scale, 2.0 / scale, 7)
    stat = _ecf_distance(a, b, thetas)
    pooled = np.concatenate([a, b])
    rng = path_rng(seed, 0xECF)
    hits = 0
    for _ in range(n_perm):
        perm = rng.permutation(pooled.size)
        pa, pb = pooled[perm[:a.size]], pooled[perm[a.size:]]
        if _ecf_distance(pa, pb, thetas) >= stat:
            hits += 1
    p = (hits + 1.0) / (n_perm + 1.0)
    return stat, float(p)


def increment_dependence(ensemble, interval_a, interval_b, thetas=None,
                         n_boot=200):
    """Factorisation defect of the joint ECF of two disjoint increments.

    ``D = |ecf_joint(th1, th2) - ecf_a(th1) ecf_b(th2)|`` with a bootstrap
    standard error (seeded from the ensemble's master seed); D compatible
    with 0 signals independent increments.  ``thetas`` defaults to the
    reciprocal scale of the first increment so the ECFs are informative.
    """
    (s1, t1), (s2, t2) = interval_a, interval_b
    if not (s1 < t1 <= s2 < t2):
        raise ValidationError("intervals must be disjoint and ordered")
    inc_a = ensemble.increments(s1, t1)
    inc_b = ensemble.increments(s2, t2)
    if thetas is None:
        th = 1.0 / _scale_guess(inc_a)
        thetas = (th, th)
    th1, th2 = thetas

    def defect(a, b):
        joint = np.exp(1j * (th1 * a + th2 * b)).mean()
        return abs(joint - np.exp(1j * th1 * a).mean()
                   * np.exp(1j * th2 * b).mean())

    d = defect(inc_a, inc_b)
    rng = path_rng(ensemble.meta.master_seed, 0xB007)
    n = inc_a.size
    boot = np.empty(n_boot)
    for k in range(n_boot):
        idx = rng.integers(0, n, size=n)
        boot[k] = defect(inc_a[idx], inc_b[idx])
    return DependenceResult(float(d), float(boot.std(ddof=1)), (th1, th2))
