"""Monte Carlo engines for the integrated trawl process and its limits.

Three families of simulators, all exact-in-distribution up to certified
series/remainder bounds, all deterministic per (master_seed, path_index):

* ``simulate_finite_activity_yt`` — exact compound-Poisson sampling of the
  normalised integrated process in kernel coordinates (r, u), where the
  intensity is ``nu(d eta) |g'(u)| dr du`` on ``{0 < r < T t_max + u}`` and
  each point contributes ``eta * interval_overlap(T t, r, u) / F_T``.
* ``simulate_stable_yt`` / ``simulate_limit_y`` — shot-noise series for
  stable integrals: with arrival times ``G_j`` of a unit-rate Poisson
  process, signs ``e_j`` and positions ``V_j`` drawn from an importance
  density m,

      sum_{G_j <= tau} e_j G_j^(-1/alpha) k(V_j) / m(V_j)^(1/alpha),

  scaled by the stable series constant; the cut tail ``G_j > tau`` is an
  independent infinitely divisible remainder whose covariance is known in
  closed quadrature form and which is replaced by a Gaussian vector with
  exactly that covariance.  The characteristic-function error of that
  replacement is bounded by the quartic term of the remainder's exponent
  and reported as ``truncation.error_bound``.
* ``simulate_x_grid`` — the stationary trawl process itself, simulated
  exactly in the plane: a Poisson slab over the observation window plus the
  exact trawl-tail law for points born arbitrarily far in the past (no
  stationarity bias), with the pathwise time integral accumulated in closed
  form from the piecewise-constant trajectories.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from ._errors import (AccuracyError, RegimeError, UnsupportedSpecError,
                      ValidationError)
from ._util import path_rng, stable_hash
from .levy import LevyExponent, PoissonDifference, split_exponent
from .trawl import TimeCombo, interval_overlap

__all__ = [
    "PathEnsemble", "EnsembleMeta", "TruncationInfo", "SeriesBudget",
    "simulate_finite_activity_yt", "simulate_stable_yt", "simulate_limit_y",
    "simulate_x_grid", "simulate_infinite_activity_yt", "simulate_stable_levy",
    "sample_sas", "series_scale",
]


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncationInfo:
    """Series horizon and the certified characteristic-function error bound."""

    n_terms: int
    error_bound: float


@dataclass(frozen=True)
class EnsembleMeta:
    master_seed: int
    config_hash: str
    process_kind: str
    truncation: TruncationInfo | None = None


class PathEnsemble:
    """Sample paths on a common time grid with full provenance.

    ``paths`` has shape (n_paths, n_times).  When the grid starts at 0 every
    path must start at 0 (all integrated processes do); stationary-process
    grids simply start after 0.  Paths are validated to be finite.
    """

    def __init__(self, times, paths, meta):
        times = np.asarray(times, dtype=float)
        paths = np.asarray(paths, dtype=float)
        if times.ndim != 1 or paths.ndim != 2 or paths.shape[1] != times.size:
            raise ValidationError("paths must be (n_paths, n_times)")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("times must be strictly increasing")
        if times[0] < 0:
            raise ValidationError("times must be nonnegative")
        if not np.all(np.isfinite(paths)):
            raise ValidationError("paths contain non-finite values")
        if times[0] == 0.0 and paths.shape[0] and np.any(paths[:, 0] != 0.0):
            raise ValidationError("paths must start at 0 at time 0")
        self.times = times
        self.paths = paths
        self.meta = meta

    @property
    def n_paths(self):
        return self.paths.shape[0]

    def values_at(self, t):
        idx = np.nonzero(np.isclose(self.times, t, rtol=0, atol=1e-12))[0]
        if idx.size != 1:
            raise ValidationError(f"time {t} is not on the ensemble grid")
        return self.paths[:, idx[0]]

    def increments(self, t0, t1):
        return self.values_at(t1) - self.values_at(t0)


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation control for the shot-noise series.

    ``n_terms`` is the Poisson horizon of the series (expected number of
    retained terms).  ``domain_u_cutoff`` optionally truncates the planar
    domain in u (None integrates the full domain exactly).  When
    ``cf_error_tol`` is set, a certified characteristic-function error bound
    above it raises :class:`AccuracyError`.
    """

    n_terms: int
    domain_u_cutoff: float | None = None
    cf_error_tol: float | None = None

    def __post_init__(self):
        if self.n_terms <= 0:
            raise ValidationError("n_terms must be positive")
        if self.domain_u_cutoff is not None and self.domain_u_cutoff <= 0:
            raise ValidationError("domain_u_cutoff must be positive")


def _run_paths(n_paths, n_times, worker, n_threads):
    """Assemble rows by path index; identical output for any thread count."""
    out = np.empty((n_paths, n_times), dtype=float)
    if n_threads is None or n_threads <= 1:
        for i in range(n_paths):
            out[i] = worker(i)
        return out
    with ThreadPoolExecutor(max_workers=int(n_threads)) as pool:
        for i, row in enumerate(pool.map(worker, range(n_paths))):
            out[i] = row
    return out


def _as_time_grid(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValidationError("times must be a nonempty 1-d grid")
    if np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValidationError("times must be strictly increasing and >= 0")
    if times[0] > 0.0:
        times = np.concatenate([[0.0], times])
    if times[-1] <= 0.0:
        raise ValidationError("the grid must extend beyond t = 0")
    return times


# ---------------------------------------------------------------------------
# position sampling under |g'(u)| dr du on {0 < r < L + u}
# ---------------------------------------------------------------------------

class _PlanarSampler:
    """Exact sampler for the probability law ``|g'(u)| dr du / mass``
    on ``{0 < r < L + u, 0 < u < U}``.

    Mixture of a rectangle part (r < L, u ~ |g'|) and a wedge part
    (L < r < L + u, u ~ u |g'(u)|); both u-laws are inverted exactly for the
    canonical family, by rejection (wedge) or through g^{-1} (rectangle) in
    general, with a table fallback for custom wedge laws.
    """

    def __init__(self, trawl, L, u_cutoff=None):
        self.trawl = trawl
        self.L = float(L)
        self.U = math.inf if u_cutoff is None else float(u_cutoff)
        g0 = trawl.g0
        gU = float(trawl.g(self.U)) if math.isfinite(self.U) else 0.0
        self.g_top = g0
        self.g_at_U = gU
        rect = self.L * (g0 - gU)
        if math.isfinite(self.U):
            # int_0^U u |g'| du = int_0^U g - U g(U)
            wedge = (trawl.measure() - trawl.tail_mass(self.U)
                     - self.U * gU)
        else:
            wedge = trawl.measure()
        self.rect_mass = rect
        self.wedge_mass = wedge
        self.mass = rect + wedge
        self._wedge_table = None
        if trawl.family != "canonical":
            self._wedge_table = self._build_wedge_table()

    def _build_wedge_table(self):
        hi = self.U if math.isfinite(self.U) else 1e9
        xs = np.concatenate([[0.0], np.geomspace(1e-9, hi, 6000)])
        dens = xs * self.trawl.density_weight(xs)
        cdf = integrate.cumulative_trapezoid(dens, xs, initial=0.0)
        cdf /= cdf[-1]
        keep = np.concatenate([[True], np.diff(cdf) > 0])
        return cdf[keep], xs[keep]

    def _sample_rect_u(self, rng, n):
        # u ~ |g'| restricted to (0, U): invert through g
        v = rng.random(n)
        y = self.g_top - v * (self.g_top - self.g_at_U)
        return np.asarray(self.trawl.g_inverse(y), dtype=float)

    def _sample_wedge_u(self, rng, n):
        if self._wedge_table is not None:
            cdf, xs = self._wedge_table
            return np.interp(rng.random(n), cdf, xs)
        # canonical: propose u ~ (1+u)^(-1-gamma) on (0, U), accept w.p. u/(1+u)
        gamma = self.trawl.gamma
        cap = 1.0 - (1.0 + self.U) ** (-gamma) if math.isfinite(self.U) else 1.0
        out = np.empty(n)
        filled = 0
        while filled < n:
            todo = n - filled
            draw = max(2 * todo, 16)
            v = rng.random(draw)
            u = (1.0 - cap * v) ** (-1.0 / gamma) - 1.0
            acc = rng.random(draw) < u / (1.0 + u)
            take = u[acc][:todo]
            out[filled:filled + take.size] = take
            filled += take.size
        return out

    def sample(self, rng, n):
        pick_wedge = rng.random(n) < (self.wedge_mass / self.mass)
        n_w = int(pick_wedge.sum())
        u = np.empty(n)
        r = np.empty(n)
        u[~pick_wedge] = self._sample_rect_u(rng, n - n_w)
        u[pick_wedge] = self._sample_wedge_u(rng, n_w)
        v = rng.random(n)
        r[~pick_wedge] = v[~pick_wedge] * self.L
        r[pick_wedge] = self.L + v[pick_wedge] * u[pick_wedge]
        return r, u


# ---------------------------------------------------------------------------
# exact compound-Poisson simulation (finite activity)
# ---------------------------------------------------------------------------

def simulate_finite_activity_yt(times, T, trawl, levy, F_T, n_paths,
                                master_seed, n_threads=1):
    """Exact-in-distribution sampling of the normalised integrated process.

    Draws N ~ Poisson(nu(R) * M) points with positions ~ |g'(u)| on
    ``{0 < r < T t_max + u}`` (M = T t_max g(0) + int g), i.i.d. marks from
    nu / nu(R), and evaluates
    ``Y_T(t) = F_T^{-1} sum_i eta_i interval_overlap(T t, r_i, u_i)``
    jointly on the grid.  Requires a finite-activity base.
    """
    spec = levy.spec if isinstance(levy, LevyExponent) else levy
    if not spec.finite_activity:
        raise UnsupportedSpecError(
            "infinite-activity base: use simulate_stable_yt (stable) or "
            "simulate_infinite_activity_yt (split at jump size 1)")
    times = _as_time_grid(times)
    if T < 1.0:
        raise ValidationError(f"T must be >= 1, got {T}")
    if F_T <= 0:
        raise ValidationError("F_T must be positive")
    if n_paths <= 0:
        raise ValidationError("n_paths must be positive")
    t_max = times[-1]
    sampler = _PlanarSampler(trawl, T * t_max)
    rate = spec.total_mass * sampler.mass
    scaled_times = T * times

    def worker(i):
        rng = path_rng(master_seed, i)
        n = int(rng.poisson(rate))
        if n == 0:
            return np.zeros(times.size)
        r, u = sampler.sample(rng, n)
        marks = spec.sample_marks(rng, n)
        overlap = interval_overlap(scaled_times[None, :], r[:, None],
                                   u[:, None])
        return (marks @ overlap) / F_T

    paths = _run_paths(n_paths, times.size, worker, n_threads)
    meta = EnsembleMeta(
        master_seed=int(master_seed),
        config_hash=stable_hash({
            "op": "finite_activity_yt", "times": times, "T": T,
            "F_T": F_T, "trawl": trawl.params(), "levy": spec.params(),
            "n_paths": n_paths, "seed": int(master_seed)}),
        process_kind="integrated_trawl")
    return PathEnsemble(times, paths, meta)


def simulate_infinite_activity_yt(times, T, trawl, levy, F_T, n_paths,
                                  master_seed, n_threads=1, threshold=1.0):
    """Integrated process for an infinite-activity non-stable base.

    Splits the jump measure at ``threshold``: the (finite) large-jump part
    is simulated exactly; the small-jump part is dropped and its omitted
    contribution to the characteristic exponent at theta = 1 is bounded via
    ``psi_small(x) <= x^2/2 int_{|y|<thr} y^2 nu(dy)`` and certified into
    ``meta.truncation.error_bound``.
    """
    if not isinstance(levy, LevyExponent):
        levy = LevyExponent(levy)
    small, large = split_exponent(levy, threshold)
    ens = simulate_finite_activity_yt(times, T, trawl, large.spec, F_T,
                                      n_paths, master_seed, n_threads)
    t_max = float(ens.times[-1])
    if isinstance(small.spec, PoissonDifference) and small.spec.intensity == 0:
        m2 = 0.0
    else:
        lo, hi = small.spec.support
        m2, _ = integrate.quad(
            lambda y: y * y * float(small.spec.density(y)), lo,
            min(hi, threshold), limit=200)
        m2 *= 2.0
    Q2 = _second_moment_matrix(
        np.array([0.0, T * t_max]),
        lambda u: float(trawl.density_weight(u)),
        tail0=lambda U: float(trawl.g(U)),
        tail1=lambda U: float(trawl.tail_mass(U)),
        first_transform=None)[1, 1]
    dropped = 0.5 * m2 * Q2 / F_T ** 2
    meta = EnsembleMeta(ens.meta.master_seed, ens.meta.config_hash,
                        "integrated_trawl_large_jumps",
                        TruncationInfo(n_terms=0, error_bound=float(dropped)))
    return PathEnsemble(ens.times, ens.paths, meta)


# ---------------------------------------------------------------------------
# stable series machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def series_scale(alpha):
    """Normalisation of the shot-noise series for a standard stable law.

    ``sigma_alpha = (int_0^inf x^(-alpha) sin x dx)^(-1/alpha)``, evaluated
    by quadrature so that ``sigma_alpha * sum e_j G_j^(-1/alpha)`` has
    characteristic function ``exp(-|theta|^alpha)``.
    """
    if not (0.0 < alpha < 2.0):
        raise ValidationError(f"stable index must lie in (0, 2), got {alpha}")
    head, _ = integrate.quad(lambda x: math.sin(x) * x ** (-alpha), 0.0, 1.0,
                             limit=200)
    tail, _ = integrate.quad(lambda x: x ** (-alpha), 1.0, np.inf,
                             weight="sin", wvar=1.0)
    return (head + tail) ** (-1.0 / alpha)


def _sym_sqrt(mat):
    """Deterministic symmetric square root with eigenvalue clipping."""
    vals, vecs = np.linalg.eigh((mat + mat.T) / 2.0)
    vals = np.clip(vals, 0.0, None)
    return vecs * np.sqrt(vals)[None, :]


def _pair_r_integrals(ts, u, order3):
    """Exact ``int_0^{t_top+u} overlap(ts_i, r, u) overlap(ts_j, r, u) dr``.

    The overlaps are piecewise linear in r with kinks at {ts, u, ts+u}, so
    per-panel 3-point Gauss is exact for the quadratic products.
    """
    gx, gw = order3
    t_top = ts[-1]
    kinks = np.unique(np.clip(np.concatenate(
        [[0.0, u], ts, ts + u, [t_top + u]]), 0.0, t_top + u))
    starts = kinks[:-1]
    widths = np.diff(kinks)
    keep = widths > 0
    starts, widths = starts[keep], widths[keep]
    nodes = (starts[:, None] + widths[:, None] * (gx[None, :] + 1) / 2).ravel()
    wts = (widths[:, None] * gw[None, :] / 2).ravel()
    F = interval_overlap(ts[None, :], nodes[:, None], u)
    return F.T @ (F * wts[:, None])


def _pair_tail_blocks(ts, order3):
    """Entry/exit ramp products P_ij and the flat level q_ij for large u."""
    gx, gw = order3
    t_top = ts[-1]
    kinks = np.unique(np.concatenate([[0.0], ts]))
    starts = kinks[:-1]
    widths = np.diff(kinks)
    keep = widths > 0
    starts, widths = starts[keep], widths[keep]
    nodes = (starts[:, None] + widths[:, None] * (gx[None, :] + 1) / 2).ravel()
    wts = (widths[:, None] * gw[None, :] / 2).ravel()
    entry = np.minimum(nodes[:, None], ts[None, :])
    exit_ = np.maximum(ts[None, :] - nodes[:, None], 0.0)
    P = entry.T @ (entry * wts[:, None]) + exit_.T @ (exit_ * wts[:, None])
    q = np.outer(ts, ts)
    return P, q


def _segment_nodes(a, b, order):
    gx, gw = np.polynomial.legendre.leggauss(order)
    nodes = a + (b - a) * (gx + 1) / 2
    wts = (b - a) * gw / 2
    return nodes, wts


def _second_moment_matrix(ts, u_weight, tail0, tail1, first_transform,
                          order=24, max_times=64):
    """``int_0^inf [int overlap_i overlap_j dr] w(u) du`` for all pairs.

    ``first_transform`` maps the (possibly singular) first u-segment onto a
    regular one; beyond ``u_top = max(ts)`` the r-integral is exactly affine
    in u, so the whole tail reduces to the weight moments ``tail0``/``tail1``.
    For long grids the matrix is computed on anchor times and interpolated
    (it feeds only the small Gaussian remainder).
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size > max_times:
        anchors_idx = np.unique(np.linspace(0, ts.size - 1, max_times)
                                .round().astype(int))
        anchors = ts[anchors_idx]
        Q = _second_moment_matrix(anchors, u_weight, tail0, tail1,
                                  first_transform, order)
        from scipy.interpolate import RegularGridInterpolator
        interp = RegularGridInterpolator((anchors, anchors), Q,
                                         bounds_error=False, fill_value=None)
        tt = np.stack(np.meshgrid(ts, ts, indexing="ij"), axis=-1)
        return interp(tt.reshape(-1, 2)).reshape(ts.size, ts.size)

    order3 = (np.array([-math.sqrt(3.0 / 5.0), 0.0, math.sqrt(3.0 / 5.0)]),
              np.array([5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0]))
    positive = ts[ts > 0]
    u_top = positive[-1]
    edges = np.unique(np.concatenate([[0.0], positive]))
    k = ts.size
    total = np.zeros((k, k))
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        if a == 0.0 and first_transform is not None:
            xs, ws = _segment_nodes(0.0, 1.0, 2 * order)
            us, jac = first_transform(xs, b)
            ws = ws * jac
        else:
            us, ws = _segment_nodes(a, b, order)
        for u, w in zip(us, ws):
            total += _pair_r_integrals(ts, u, order3) * (w * u_weight(u))
    P, q = _pair_tail_blocks(ts, order3)
    total += P * tail0(u_top) + q * tail1(u_top)
    return total


def _series_ensemble(times, eval_w, sigma_eff, tau, second_moment, n_paths,
                     master_seed, n_threads, alpha):
    """Shared shot-noise loop: core terms up to horizon tau plus the
    exact-covariance Gaussian remainder."""
    k = times.size
    c_tau = tau ** (1.0 - 2.0 / alpha) / (2.0 / alpha - 1.0)
    S = _sym_sqrt(second_moment * c_tau)

    def worker(i):
        arr_rng = path_rng(master_seed, i, 0)
        pos_rng = path_rng(master_seed, i, 1)
        sign_rng = path_rng(master_seed, i, 2)
        noise_rng = path_rng(master_seed, i, 3)
        gammas = []
        total = 0.0
        while True:
            block = arr_rng.exponential(size=256)
            csum = total + np.cumsum(block)
            inside = csum <= tau
            gammas.append(csum[inside])
            if not inside.all():
                break
            total = csum[-1]
        g = np.concatenate(gammas) if gammas else np.empty(0)
        row = np.zeros(k)
        if g.size:
            w = eval_w(pos_rng, g.size)          # (n_terms, k)
            signs = sign_rng.integers(0, 2, size=g.size) * 2.0 - 1.0
            row = (signs * g ** (-1.0 / alpha)) @ w
        z = noise_rng.standard_normal(k)
        row = row + S @ z
        return sigma_eff * row

    return _run_paths(n_paths, k, worker, n_threads)


def _quartic_error_bound(sigma_eff, tau, alpha, ew2_max, w_max, theta=1.0):
    """Certified char.-function error of the Gaussian remainder replacement.

    |E e^{i th R} - E e^{i th G}| <= int_{tau}^inf E (th sig s^{-1/a} w)^4/24 ds
    with E w^4 <= w_max^2 E w^2.
    """
    c4 = tau ** (1.0 - 4.0 / alpha) / (4.0 / alpha - 1.0)
    return (theta * sigma_eff) ** 4 * w_max ** 2 * ew2_max * c4 / 24.0


def simulate_stable_yt(times, T, trawl, alpha, F_T, budget, n_paths,
                       master_seed, n_threads=1):
    """Shot-noise simulation of the integrated process over a stable base.

    The planar stable integral on ``{0 < r < T t_max + u}`` with control
    ``|g'(u)| dr du`` is represented by the series with positions drawn from
    that (finite-mass) law, normalised so the joint characteristic function
    equals ``exp(-int |theta f / F_T|^alpha |g'| dr du)``; the cut tail is
    replaced by its exact-covariance Gaussian limit and the replacement
    error is certified in ``meta.truncation.error_bound``.
    """
    times = _as_time_grid(times)
    if not (0.0 < alpha < 2.0):
        raise ValidationError(f"stable index must lie in (0, 2), got {alpha}")
    if T < 1.0:
        raise ValidationError(f"T must be >= 1, got {T}")
    if F_T <= 0:
        raise ValidationError("F_T must be positive")
    t_max = times[-1]
    L = T * t_max
    cutoff = budget.domain_u_cutoff
    if cutoff is not None and cutoff < L:
        raise ValidationError("domain_u_cutoff must be >= T * t_max")
    sampler = _PlanarSampler(trawl, L, cutoff)
    mu = sampler.mass
    sigma = series_scale(alpha)
    sigma_eff = sigma * mu ** (1.0 / alpha) / F_T
    tau = float(budget.n_terms)
    ts = T * times

    def u_weight(u):
        return float(trawl.density_weight(u)) / mu

    if cutoff is None or not math.isfinite(cutoff):
        tail0 = lambda U: float(trawl.g(U)) / mu
        tail1 = lambda U: float(trawl.tail_mass(U)) / mu
    else:
        # the remainder lives on the truncated domain: weight moments stop
        # at the cutoff
        g_cut = float(trawl.g(cutoff))
        m_cut = float(trawl.tail_mass(cutoff))
        tail0 = lambda U: (float(trawl.g(U)) - g_cut) / mu
        tail1 = lambda U: (float(trawl.tail_mass(U)) - m_cut
                           - (cutoff - U) * g_cut) / mu
    Q = _second_moment_matrix(ts, u_weight, tail0=tail0, tail1=tail1,
                              first_transform=None)

    def eval_w(rng, n):
        r, u = sampler.sample(rng, n)
        return interval_overlap(ts[None, :], r[:, None], u[:, None])

    paths = _series_ensemble(times, eval_w, sigma_eff, tau, Q,
                             n_paths, master_seed, n_threads, alpha)
    paths[:, times == 0.0] = 0.0

    err = _quartic_error_bound(sigma_eff, tau, alpha,
                               float(np.max(np.diag(Q))), L)
    if cutoff is not None and math.isfinite(cutoff):
        # exactly the exponent mass of the neglected region u > cutoff,
        # at reference theta = 1 for the largest grid time
        from .exponents import _tail_pieces, _TrawlWeight
        P, q = _tail_pieces(TimeCombo.single(1.0, t_max), T,
                            lambda x: np.abs(x) ** alpha, 1.0 / F_T, 0.0)
        w = _TrawlWeight(trawl)
        err += P * w.tail0(cutoff) + q * (w.tail1(cutoff)
                                          + (cutoff - L) * w.tail0(cutoff))
    if budget.cf_error_tol is not None and err > budget.cf_error_tol:
        raise AccuracyError(
            f"certified series error {err:.3e} exceeds requested "
            f"{budget.cf_error_tol:.3e}; increase n_terms", achieved=err)

    meta = EnsembleMeta(
        master_seed=int(master_seed),
        config_hash=stable_hash({
            "op": "stable_yt", "times": times, "T": T, "F_T": F_T,
            "alpha": alpha, "trawl": trawl.params(),
            "n_terms": budget.n_terms, "cutoff": cutoff,
            "n_paths": n_paths, "seed": int(master_seed)}),
        process_kind="integrated_trawl_stable",
        truncation=TruncationInfo(budget.n_terms, float(err)))
    return PathEnsemble(times, paths, meta)


# ---------------------------------------------------------------------------
# the dependent-increment limit process
# ---------------------------------------------------------------------------

class _LimitSampler:
    """Importance law ``m(r, u) ∝ (u ^ t_max)^alpha u^(-2-gamma)`` on
    ``{0 < r < t_max + u}``.

    Integrable exactly when alpha > 1 + gamma, and chosen so the series
    summand ``kernel / m^(1/alpha)`` is bounded by Z^(1/alpha), the standard
    sufficient condition for series convergence.  Sampled exactly as a
    four-component power-law mixture.
    """

    def __init__(self, alpha, gamma, t_max):
        a, g, t = alpha, gamma, t_max
        self.alpha, self.gamma, self.t_max = a, g, t
        # masses of: t*u^(a-2-g), u^(a-1-g) on (0,t); t^(a+1) u^(-2-g),
        # t^a u^(-1-g) on (t, inf) -- all against dr-width (t+u)
        m1 = t ** (a - g) / (a - 1.0 - g)
        m2 = t ** (a - g) / (a - g)
        m3 = t ** (a - g) / (1.0 + g)
        m4 = t ** (a - g) / g
        self.weights = np.array([m1, m2, m3, m4])
        self.Z = float(self.weights.sum())

    def sample(self, rng, n):
        a, g, t = self.alpha, self.gamma, self.t_max
        comp = rng.choice(4, size=n, p=self.weights / self.Z)
        v = rng.random(n)
        u = np.empty(n)
        m = comp == 0
        u[m] = t * v[m] ** (1.0 / (a - 1.0 - g))
        m = comp == 1
        u[m] = t * v[m] ** (1.0 / (a - g))
        m = comp == 2
        u[m] = t * v[m] ** (-1.0 / (1.0 + g))
        m = comp == 3
        u[m] = t * v[m] ** (-1.0 / g)
        r = rng.random(n) * (t + u)
        return r, u


def simulate_limit_y(times, alpha, gamma, budget, n_paths, master_seed,
                     n_threads=1):
    """Shot-noise simulation of the dependent-increment stable limit.

    The limit process is the planar stable integral of
    ``interval_overlap(t, r, u) u^(-(2+gamma)/alpha)`` and exists only for
    ``alpha > 1 + gamma``.  Its marginal law satisfies
    ``E exp(i theta Y(t)) = exp(-|theta|^alpha J(alpha, gamma, t))`` with J
    the kernel moment; paths are self-similar with index 1 - gamma/alpha.
    """
    times = _as_time_grid(times)
    if not (0.0 < gamma < 1.0):
        raise ValidationError(f"gamma must lie in (0, 1), got {gamma}")
    if not (1.0 + gamma < alpha < 2.0):
        raise RegimeError(
            f"the dependent-increment limit requires alpha > 1 + gamma "
            f"(got alpha={alpha}, gamma={gamma})")
    t_max = float(times[-1])
    sampler = _LimitSampler(alpha, gamma, t_max)
    Z = sampler.Z
    sigma_eff = series_scale(alpha) * Z ** (1.0 / alpha)
    tau = float(budget.n_terms)
    ts = np.asarray(times, dtype=float)

    def u_weight(u):
        return min(u, t_max) ** (alpha - 2.0) * u ** (-2.0 - gamma) / Z

    def first_transform(xs, b):
        # u = b * x^p regularises the u^(alpha-2-gamma) edge
        p = 1.0 / (alpha - 1.0 - gamma)
        us = b * xs ** p
        jac = b * p * xs ** (p - 1.0)
        return us, jac

    pw = 1.0 + gamma
    # Q in the units of the series summand f / (u ^ t_max); sigma_eff
    # carries the Z^(1/alpha) importance normalisation
    Q = _second_moment_matrix(
        ts, u_weight,
        tail0=lambda U: t_max ** (alpha - 2.0) * U ** (-pw) / (pw * Z),
        tail1=lambda U: t_max ** (alpha - 2.0) * U ** (1.0 - pw)
        / (gamma * pw * Z),
        first_transform=first_transform)

    def eval_w(rng, n):
        r, u = sampler.sample(rng, n)
        w = interval_overlap(ts[None, :], r[:, None], u[:, None])
        return w / np.minimum(u, t_max)[:, None]

    paths = _series_ensemble(times, eval_w, sigma_eff, tau, Q,
                             n_paths, master_seed, n_threads, alpha)
    paths[:, times == 0.0] = 0.0

    # the summand f/(u ^ t_max) is bounded by 1 for grid times <= t_max
    err = _quartic_error_bound(sigma_eff, tau, alpha,
                               float(np.max(np.diag(Q))), 1.0)
    if budget.cf_error_tol is not None and err > budget.cf_error_tol:
        raise AccuracyError(
            f"certified series error {err:.3e} exceeds requested "
            f"{budget.cf_error_tol:.3e}; increase n_terms", achieved=err)
    meta = EnsembleMeta(
        master_seed=int(master_seed),
        config_hash=stable_hash({
            "op": "limit_y", "times": times, "alpha": alpha, "gamma": gamma,
            "n_terms": budget.n_terms, "n_paths": n_paths,
            "seed": int(master_seed)}),
        process_kind="limit_dependent_stable",
        truncation=TruncationInfo(budget.n_terms, float(err)))
    return PathEnsemble(times, paths, meta)


# ---------------------------------------------------------------------------
# the stationary trawl process on its own grid
# ---------------------------------------------------------------------------

def simulate_x_grid(trawl, levy, times, T, F_T, window, n_paths, master_seed,
                    n_threads=1):
    """Exact planar simulation of the stationary trawl process X.

    Points born inside ``[-window, T t_max]`` are drawn uniformly under
    ``y < g(0)``; points born before the window are drawn exactly from the
    trawl-tail law (position density ∝ g(-x) on x < -window, height uniform
    under g(-x)), so there is no stationarity bias for any window >= 0.
    Returns ``(x_ensemble, yt_ensemble)``: X sampled at ``T * times`` (t=0
    excluded; X is stationary, not zero-started) and the exactly-integrated
    ``Y_T(t) = F_T^{-1} int_0^{T t} X_s ds`` on ``times``.
    """
    spec = levy.spec if isinstance(levy, LevyExponent) else levy
    if not spec.finite_activity:
        raise UnsupportedSpecError("grid simulation needs a finite-activity base")
    if window < 0:
        raise ValidationError("window must be >= 0")
    times = _as_time_grid(times)
    t_max = float(times[-1])
    horizon = T * t_max
    mass = spec.total_mass
    near_rate = mass * (window + horizon) * trawl.g0
    far_rate = mass * trawl.tail_mass(window)
    x_times = T * times[times > 0]
    ts = T * times

    if trawl.family == "canonical":
        def sample_far_age(rng, n):
            v = rng.random(n)
            return (1.0 + window) * v ** (-1.0 / trawl.gamma) - 1.0
    else:
        hi = 1e9
        xs = np.geomspace(max(window, 1e-9), hi, 6000)
        gs = trawl.g(xs)
        cdf = integrate.cumulative_trapezoid(gs, xs, initial=0.0)
        cdf /= cdf[-1]
        keep = np.concatenate([[True], np.diff(cdf) > 0])
        tab_cdf, tab_x = cdf[keep], xs[keep]

        def sample_far_age(rng, n):
            return np.interp(rng.random(n), tab_cdf, tab_x)

    def worker(i):
        rng = path_rng(master_seed, i)
        n_near = int(rng.poisson(near_rate))
        x_near = -window + rng.random(n_near) * (window + horizon)
        y_near = rng.random(n_near) * trawl.g0
        n_far = int(rng.poisson(far_rate))
        age = sample_far_age(rng, n_far)
        x_far = -age
        y_far = rng.random(n_far) * np.asarray(trawl.g(age), dtype=float)
        x = np.concatenate([x_near, x_far])
        y = np.concatenate([y_near, y_far])
        marks = spec.sample_marks(rng, x.size)
        life = np.asarray(trawl.g_inverse(y), dtype=float)
        death = x + life
        # X at the sampling instants
        alive = (x[:, None] <= x_times[None, :]) & \
                (x_times[None, :] <= death[:, None])
        x_row = marks @ alive
        # exact time integral of the indicator against [0, T t]
        overlap = np.clip(np.minimum(ts[None, :], death[:, None])
                          - np.maximum(x[:, None], 0.0), 0.0, None)
        y_row = (marks @ overlap) / F_T
        return np.concatenate([x_row, y_row])

    k_x = x_times.size
    both = _run_paths(n_paths, k_x + ts.size, worker, n_threads)
    cfg = stable_hash({
        "op": "x_grid", "times": times, "T": T, "F_T": F_T,
        "window": window, "trawl": trawl.params(), "levy": spec.params(),
        "n_paths": n_paths, "seed": int(master_seed)})
    x_ens = PathEnsemble(x_times, both[:, :k_x],
                         EnsembleMeta(int(master_seed), cfg, "trawl_x"))
    y_ens = PathEnsemble(times, both[:, k_x:],
                         EnsembleMeta(int(master_seed), cfg,
                                      "integrated_trawl_from_grid"))
    return x_ens, y_ens


# ---------------------------------------------------------------------------
# reference stable generators
# ---------------------------------------------------------------------------

def sample_sas(rng, alpha, size):
    """Symmetric alpha-stable draws with char. function exp(-|theta|^alpha).

    Chambers-Mallows-Stuck: V uniform on (-pi/2, pi/2), W standard
    exponential; alpha = 1 reduces to the Cauchy tan(V).
    """
    if not (0.0 < alpha <= 2.0):
        raise ValidationError(f"alpha must lie in (0, 2], got {alpha}")
    v = (rng.random(size) - 0.5) * np.pi
    if alpha == 2.0:
        return np.sqrt(2.0) * rng.standard_normal(size)
    if alpha == 1.0:
        return np.tan(v)
    w = rng.exponential(size=size)
    return (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))


def simulate_stable_levy(times, alpha, scale, n_paths, master_seed,
                         n_threads=1):
    """A symmetric stable process with independent increments.

    ``E exp(i theta L(t)) = exp(-t |scale * theta|^alpha)``; this is the
    limit law in the independent-increment regimes and the reference
    ensemble for dependence diagnostics.
    """
    times = _as_time_grid(times)
    dts = np.diff(times)

    def worker(i):
        rng = path_rng(master_seed, i)
        steps = sample_sas(rng, alpha, dts.size)
        incs = scale * dts ** (1.0 / alpha) * steps
        return np.concatenate([[0.0], np.cumsum(incs)])

    paths = _run_paths(n_paths, times.size, worker, n_threads)
    meta = EnsembleMeta(
        master_seed=int(master_seed),
        config_hash=stable_hash({
            "op": "stable_levy", "times": times, "alpha": alpha,
            "scale": scale, "n_paths": n_paths, "seed": int(master_seed)}),
        process_kind="stable_levy")
    return PathEnsemble(times, paths, meta)
