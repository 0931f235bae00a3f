"""Modified Bessel function of the second kind for imaginary (and complex) order.

Everything rests on the integral representation

    K_nu(x) = 1/2 * int_{-inf}^{inf} exp(-x cosh u + nu u) du,

which holds for every complex order.  For nu = i t with large |t| the value is
of order exp(-pi |t| / 2), so integrating along the real u axis loses all
relative accuracy to cancellation.  The contour is therefore moved to the
horizontal line Im u = sigma (0 <= sigma < pi/2), chosen close to the saddle
points of the exponent:

    K_nu(x) = 1/2 exp(i nu sigma) int exp(-x cosh(s + i sigma) + nu s) ds.

The prefactor exp(-|t| sigma) carries the exponential smallness and the
remaining integrand is smooth, analytic and double-exponentially decaying, so a
plain trapezoid rule converges geometrically.  The step is tied to the width
of the strip of analyticity (pi/2 - sigma) and to the curvature of the exponent at its peak.

Conjugate nodes s and -s are summed in closed real form, so for purely
imaginary order the result is real by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, njit
from .errors import AccuracyError, DomainError

__all__ = [
    "BesselEvalSpec",
    "DEFAULT_BESSEL_SPEC",
    "bessel_k",
    "bessel_k_imag_order",
    "bessel_k_real_order",
    "bessel_recurrence_residual",
]


@dataclass(frozen=True)
class BesselEvalSpec:
    """Accuracy policy for the K_nu evaluations.

    ``tail_tol`` is the truncation policy: the integration variable is cut at
    u_max where the integrand has fallen below ``tail_tol`` times its peak.
    """

    rel_tol: float = 1e-12
    abs_floor: float = 1e-300
    tail_tol: float = 1e-18
    max_nodes: int = 400_000
    t_limit: float = 50.0
    x_min: float = 1e-3
    x_max: float = 1e2
    re_order_limit: float = 10.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.abs_floor < 0:
            raise DomainError("abs_floor must be non-negative")
        if not 0 < self.tail_tol < 1:
            raise DomainError("tail_tol must lie in (0, 1)")

    @property
    def nodes_per_strip(self) -> int:
        # trapezoid error ~ exp(-2 pi * 0.8 * m) for m steps across the strip
        return max(4, math.ceil(math.log(1.0 / self.rel_tol) / (1.6 * math.pi)))

    def u_max(self, x: float, sigma: float = 0.0, re_order: float = 0.0) -> float:
        """Truncation point of the integration variable for argument ``x``."""
        return _u_max(x, math.cos(sigma), abs(re_order), -math.log(self.tail_tol))


DEFAULT_BESSEL_SPEC = BesselEvalSpec()


@njit
def _u_max(x, cos_sigma, abs_mu, tail_log):
    # smallest s with x cos(sigma) (cosh s - 1) - |mu| s >= tail_log
    a = x * cos_sigma
    s = math.acosh(1.0 + tail_log / a)
    for _ in range(50):
        s_new = math.acosh(1.0 + (tail_log + abs_mu * s) / a)
        if abs(s_new - s) < 1e-12:
            return s_new + 0.5
        s = s_new
    return s + 0.5


@njit
def _plan(mu, t, x, nper, tail_log):
    """Contour height (signed), trapezoid step and half node count."""
    ta = abs(t)
    sig_star = math.asin(min(ta / x, 1.0))
    if ta > 0.0:
        delta = min(0.5 * math.pi, max(2.0 / ta, 0.02))
    else:
        delta = 0.5 * math.pi
    sigma = min(sig_star, 0.5 * math.pi - delta)
    width = 0.5 * math.pi - sigma
    # curvature of x cosh(s) at the real-order peak is hypot(x, mu)
    h = min(width / nper, 2.4 / nper / math.sqrt(math.hypot(x, mu)))
    smax = _u_max(x, math.cos(sigma), abs(mu), tail_log)
    n = int(math.ceil(smax / h))
    if t < 0.0:
        sigma = -sigma
    return sigma, h, n


@njit
def _kv_loop(mu, t, x, nper, tail_log, max_nodes):
    """Scalar-loop kernel over arrays of orders mu + i t at one argument x.

    Returns (values, nodes); a node count of -1 flags a blown budget.
    """
    m = mu.shape[0]
    out = np.empty(m, dtype=np.complex128)
    nodes = np.empty(m, dtype=np.int64)
    for i in range(m):
        sigma, h, n = _plan(mu[i], t[i], x, nper, tail_log)
        if 2 * n + 1 > max_nodes:
            out[i] = np.nan
            nodes[i] = -1
            continue
        cs = math.cos(sigma)
        ss = math.sin(sigma)
        re = math.exp(-x * cs)
        im = 0.0
        for k in range(1, n + 1):
            s = k * h
            amp = math.exp(-x * cs * math.cosh(s))
            if amp == 0.0:
                break
            ph = t[i] * s - x * ss * math.sinh(s)
            if mu[i] == 0.0:
                re += 2.0 * amp * math.cos(ph)
            else:
                re += 2.0 * amp * math.cosh(mu[i] * s) * math.cos(ph)
                im += 2.0 * amp * math.sinh(mu[i] * s) * math.sin(ph)
        scale = 0.5 * h * math.exp(-abs(t[i] * sigma))
        pr = math.cos(mu[i] * sigma)
        pi_ = math.sin(mu[i] * sigma)
        out[i] = complex(scale * (pr * re - pi_ * im), scale * (pr * im + pi_ * re))
        nodes[i] = 2 * n + 1
    return out, nodes


def _kv_vec(mu, t, x, nper, tail_log, max_nodes):
    """numpy twin of :func:`_kv_loop`: loop over orders, vectorise over nodes."""
    m = mu.shape[0]
    out = np.empty(m, dtype=np.complex128)
    nodes = np.empty(m, dtype=np.int64)
    for i in range(m):
        sigma, h, n = _plan(mu[i], t[i], x, nper, tail_log)
        if 2 * n + 1 > max_nodes:
            out[i] = np.nan
            nodes[i] = -1
            continue
        cs, ss = math.cos(sigma), math.sin(sigma)
        s = h * np.arange(1, n + 1)
        amp = np.exp(-x * cs * np.cosh(s))
        ph = t[i] * s - x * ss * np.sinh(s)
        re = math.exp(-x * cs) + 2.0 * np.sum(amp * np.cosh(mu[i] * s) * np.cos(ph))
        im = 2.0 * np.sum(amp * np.sinh(mu[i] * s) * np.sin(ph))
        scale = 0.5 * h * math.exp(-abs(t[i] * sigma))
        out[i] = scale * complex(re, im) * complex(math.cos(mu[i] * sigma), math.sin(mu[i] * sigma))
        nodes[i] = 2 * n + 1
    return out, nodes


_kv_impl = _kv_loop if USE_NUMBA else _kv_vec


def _check_argument(x: float, spec: BesselEvalSpec) -> float:
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"K_nu(x) requires x > 0, got {x!r}")
    if not spec.x_min <= x <= spec.x_max:
        raise AccuracyError(
            f"argument x={x:g} outside validity domain [{spec.x_min:g}, {spec.x_max:g}]"
        )
    return x


def _evaluate(mu, t, x, spec):
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    t = np.ascontiguousarray(t, dtype=np.float64)
    if mu.size and np.max(np.abs(t)) > spec.t_limit:
        raise AccuracyError(f"|Im nu| exceeds the validity limit {spec.t_limit:g}")
    if mu.size and np.max(np.abs(mu)) > spec.re_order_limit:
        raise AccuracyError(f"|Re nu| exceeds the validity limit {spec.re_order_limit:g}")
    vals, nodes = _kv_impl(
        mu, t, x, spec.nodes_per_strip, -math.log(spec.tail_tol), spec.max_nodes
    )
    if np.any(nodes < 0):
        raise AccuracyError("oscillation resolution needs more nodes than max_nodes")
    return vals, nodes


def bessel_k(nu, x: float, spec: BesselEvalSpec = DEFAULT_BESSEL_SPEC):
    """K_nu(x) for complex order ``nu`` (scalar or array) and real x > 0."""
    x = _check_argument(x, spec)
    arr = np.asarray(nu, dtype=np.complex128)
    flat = arr.ravel()
    vals, _ = _evaluate(flat.real, flat.imag, x, spec)
    vals = vals.reshape(arr.shape)
    return complex(vals) if arr.ndim == 0 else vals


def bessel_k_imag_order(t, x: float, spec: BesselEvalSpec = DEFAULT_BESSEL_SPEC):
    """K_{it}(x) for real t (scalar or array); real and even in t.

    >>> round(bessel_k_imag_order(0.0, 1.0), 10)
    0.4210244382
    """
    x = _check_argument(x, spec)
    arr = np.asarray(t, dtype=np.float64)
    flat = arr.ravel()
    vals, _ = _evaluate(np.zeros_like(flat), flat, x, spec)
    out = vals.real.reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def bessel_k_real_order(nu: float, x: float, spec: BesselEvalSpec = DEFAULT_BESSEL_SPEC) -> float:
    """K_nu(x) for small real order; used to cross-check the imaginary path."""
    x = _check_argument(x, spec)
    vals, _ = _evaluate(np.array([float(nu)]), np.zeros(1), x, spec)
    return float(vals[0].real)


def bessel_recurrence_residual(t: float, x: float, spec: BesselEvalSpec = DEFAULT_BESSEL_SPEC) -> float:
    """Normalised residual of K_{nu+1} - K_{nu-1} - (2 nu / x) K_nu at nu = i t.

    The sign pattern is the one obeyed by K (for I_nu the left side flips sign),
    which is why the residual vanishes here.
    """
    x = _check_argument(x, spec)
    t = float(t)
    vals, _ = _evaluate(np.array([1.0, -1.0, 0.0]), np.array([t, t, t]), x, spec)
    k_up, k_dn, k_0 = vals
    resid = k_up - k_dn - (2j * t / x) * k_0
    return abs(resid) / max(abs(k_0), spec.abs_floor)
