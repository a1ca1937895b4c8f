"""Trawl geometry: the trawl function g and the deterministic kernels.

The trawl set is ``A = {(x, y): x <= 0, 0 <= y <= g(-x)}`` for a strictly
decreasing, integrable ``g``.  Everything the rest of the toolkit computes
is driven by three deterministic objects defined here:

* ``interval_overlap(t, r, u)`` — the length of ``[0, t] ∩ [r - u, r]``,
  the kernel through which the random base enters the integrated process;
* ``TrawlSpec`` — g together with its derivative, inverse and tail index;
* ``TimeCombo`` — a finite set of (coefficient, time) pairs and the step
  function / weighted kernels built from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._errors import ValidationError

__all__ = ["interval_overlap", "TrawlSpec", "TimeCombo"]


def interval_overlap(t, r, u):
    """Length of the overlap of ``[0, t]`` and ``[r - u, r]``.

    Branch-free closed form ``min(r+, t) - min((r-u)+, t)``; accepts scalars
    or broadcastable arrays.  All arguments are expected nonnegative.
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    u = np.asarray(u, dtype=float)
    out = np.minimum(np.maximum(r, 0.0), t) - np.minimum(np.maximum(r - u, 0.0), t)
    if out.ndim == 0:
        return float(out)
    return out


def _default_grid():
    return np.geomspace(1e-6, 1e6, 121)


class TrawlSpec:
    """A trawl function with its derivative, inverse and tail constant.

    Use :meth:`canonical` for the built-in family ``g(x) = C (1+x)^(-1-gamma)``
    or :meth:`custom` to supply ``g``, ``g'`` and ``g^{-1}`` as callables with
    a declared tail constant ``C_g = lim x^(2+gamma) |g'(x)|``.

    Custom callables are validated for monotonicity, integrability, inverse
    consistency (1e-10 on a test grid) and the declared tail law (1% at
    x = 1e3, 1e4); they are never differentiated or inverted numerically.
    """

    def __init__(self, *, gamma, family, C=None, C_g=None, g=None,
                 g_prime=None, g_inverse=None, validate=True):
        if not (0.0 < gamma < 1.0):
            raise ValidationError(f"gamma must lie in (0, 1), got {gamma}")
        self.gamma = float(gamma)
        self.family = family
        if family == "canonical":
            if C is None or C <= 0:
                raise ValidationError(f"canonical scale C must be positive, got {C}")
            self.C = float(C)
            self.C_g = self.C * (1.0 + self.gamma)
        elif family == "custom":
            if g is None or g_prime is None or g_inverse is None:
                raise ValidationError("custom trawl requires g, g_prime and g_inverse")
            if C_g is None or C_g <= 0:
                raise ValidationError("custom trawl requires a declared C_g > 0")
            self.C = None
            self.C_g = float(C_g)
            self._g = g
            self._g_prime = g_prime
            self._g_inverse = g_inverse
            if validate:
                self._validate_custom()
        else:
            raise ValidationError(f"unknown trawl family {family!r}")
        self.g0 = float(self.g(0.0))
        if not math.isfinite(self.g0) or self.g0 <= 0:
            raise ValidationError("g(0) must be positive and finite")

    @classmethod
    def canonical(cls, C=1.0, gamma=0.5):
        return cls(gamma=gamma, family="canonical", C=C)

    @classmethod
    def custom(cls, g, g_prime, g_inverse, gamma, C_g, validate=True):
        return cls(gamma=gamma, family="custom", g=g, g_prime=g_prime,
                   g_inverse=g_inverse, C_g=C_g, validate=validate)

    # -- evaluation ---------------------------------------------------------

    def g(self, x):
        if self.family == "canonical":
            x = np.asarray(x, dtype=float)
            return self.C * (1.0 + x) ** (-1.0 - self.gamma)
        return self._g(np.asarray(x, dtype=float))

    def g_prime(self, x):
        if self.family == "canonical":
            x = np.asarray(x, dtype=float)
            return -self.C * (1.0 + self.gamma) * (1.0 + x) ** (-2.0 - self.gamma)
        return self._g_prime(np.asarray(x, dtype=float))

    def g_inverse(self, y):
        if self.family == "canonical":
            y = np.asarray(y, dtype=float)
            return (self.C / y) ** (1.0 / (1.0 + self.gamma)) - 1.0
        return self._g_inverse(np.asarray(y, dtype=float))

    def density_weight(self, u):
        """|g'(u)|, the planar weight in all characteristic-exponent integrals."""
        return np.abs(self.g_prime(u))

    # -- integrals ----------------------------------------------------------

    def measure(self):
        """Lebesgue measure of the trawl set, ``int_0^inf g``."""
        if self.family == "canonical":
            return self.C / self.gamma
        val, err = integrate.quad(lambda x: float(self.g(x)), 0.0, np.inf, limit=200)
        if not np.isfinite(val) or err > 1e-6 * max(1.0, abs(val)):
            raise ValidationError("quadrature of int_0^inf g did not converge")
        return val

    def tail_mass(self, x):
        """``int_x^inf g``, also equal to ``int_x^inf (u - x) |g'(u)| du``."""
        if self.family == "canonical":
            return (self.C / self.gamma) * (1.0 + x) ** (-self.gamma)
        val, _ = integrate.quad(lambda s: float(self.g(s)), x, np.inf, limit=200)
        return val

    # -- validation ---------------------------------------------------------

    def _validate_custom(self):
        grid = _default_grid()
        vals = np.asarray(self._g(grid), dtype=float)
        if np.any(vals <= 0):
            raise ValidationError("custom g must be strictly positive")
        if np.any(np.diff(vals) >= 0):
            raise ValidationError("custom g must be strictly decreasing")
        back = np.asarray(self._g_inverse(vals), dtype=float)
        rel = np.max(np.abs(back - grid) / np.maximum(1.0, grid))
        if rel > 1e-10:
            raise ValidationError(
                f"g_inverse(g(x)) deviates from x by {rel:.2e} (> 1e-10)")
        for x in (1e3, 1e4):
            tail = x ** (2.0 + self.gamma) * abs(float(self._g_prime(x)))
            if abs(tail / self.C_g - 1.0) > 0.01:
                raise ValidationError(
                    f"declared C_g={self.C_g} inconsistent with g' at x={x:g} "
                    f"(observed {tail:.6g})")
        val, err = integrate.quad(lambda x: float(self._g(x)), 0.0, np.inf, limit=200)
        if not np.isfinite(val):
            raise ValidationError("custom g is not integrable")

    def params(self):
        if self.family == "canonical":
            return {"family": "canonical", "C": self.C, "gamma": self.gamma}
        return {"family": "custom", "C_g": self.C_g, "gamma": self.gamma}

    def __repr__(self):
        if self.family == "canonical":
            return f"TrawlSpec.canonical(C={self.C}, gamma={self.gamma})"
        return f"TrawlSpec.custom(gamma={self.gamma}, C_g={self.C_g})"


@dataclass(frozen=True)
class TimeCombo:
    """Coefficients ``a_j`` attached to times ``t_j`` (sorted, nonnegative).

    Defines the step function ``a(r) = sum_j a_j 1[0 <= r <= t_j]`` and the
    weighted kernel ``h_T(r, u) = sum_j a_j interval_overlap(T t_j, r, u)``.
    """

    coefficients: tuple
    times: tuple

    def __post_init__(self):
        coeff = tuple(float(a) for a in self.coefficients)
        times = tuple(float(t) for t in self.times)
        if len(coeff) == 0 or len(coeff) != len(times):
            raise ValidationError("combo needs n >= 1 (coefficient, time) pairs")
        if any(t < 0 for t in times):
            raise ValidationError("combo times must be nonnegative")
        if any(t2 < t1 for t1, t2 in zip(times, times[1:])):
            raise ValidationError("combo times must be nondecreasing")
        object.__setattr__(self, "coefficients", coeff)
        object.__setattr__(self, "times", times)

    @classmethod
    def single(cls, a, t):
        return cls((a,), (t,))

    @classmethod
    def from_pairs(cls, pairs):
        pairs = sorted(pairs, key=lambda p: p[1])
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def t_max(self):
        return self.times[-1]

    @property
    def abs_coeff_sum(self):
        return sum(abs(a) for a in self.coefficients)

    def step(self, r):
        """The step function ``a(r)``; support is contained in [0, t_max]."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for a, t in zip(self.coefficients, self.times):
            out += a * ((r >= 0.0) & (r <= t))
        if out.ndim == 0:
            return float(out)
        return out

    def kernel(self, T, r, u):
        """``h_T(r, u) = sum_j a_j interval_overlap(T t_j, r, u)``."""
        r = np.asarray(r, dtype=float)
        u = np.asarray(u, dtype=float)
        out = np.zeros(np.broadcast(r, u).shape)
        for a, t in zip(self.coefficients, self.times):
            out += a * interval_overlap(T * t, r, u)
        if out.ndim == 0:
            return float(out)
        return out

    def abs_step_integral(self, p):
        """Exact ``int_0^inf |a(r)|^p dr`` for the piecewise-constant step."""
        if p <= 0:
            raise ValidationError("exponent p must be positive")
        total = 0.0
        prev = 0.0
        # on (t_{j-1}, t_j] the step equals the suffix sum of coefficients
        for j, t in enumerate(self.times):
            width = t - prev
            if width > 0:
                s = sum(self.coefficients[j:])
                total += abs(s) ** p * width
            prev = t
        return total
