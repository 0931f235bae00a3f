"""The 2+1 wavefunction in three representations.

* closed form: six exponentials per sector, obtained by inverting the
  Kontorovich-Lebedev pair  int_{-i inf}^{i inf} cosh(w nu) K_nu(z) dnu = i pi exp(-z cosh w);
* the KL integral itself, A(nu) S(nu, theta) K_nu(KR) along the imaginary axis;
* the cartesian plane-wave sum with complex single-particle momenta.

The three agree with no extra factor between the first two; the plane-wave
sum is the closed form divided by i pi/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import AccuracyError, ConvergenceError, DegenerateError, DomainError
from .geometry import HyperPoint, ParticleConfig
from .quadrature import one_sided_derivative, panel_rule
from .scattering import ChannelEnergy, ScatteringSolution, coefficient_A
from .specfun import DEFAULT_BESSEL_SPEC, BesselEvalSpec, bessel_k_imag_order
from .sturmian import ModelParams

__all__ = [
    "QuadratureSpec",
    "KLResult",
    "PlaneWaveMomenta",
    "psi_closed_form",
    "psi_closed_form_cosh",
    "kl_integral",
    "kl_cosh_pair",
    "kl_admissible_offset",
    "psi_asymptotic",
    "boundary_condition_residual",
    "plane_wave_momenta",
    "psi_plane_wave",
]

KL_LINE_MARGIN = math.pi / 60
CLOSED_FORM_PREFACTOR = 0.5j * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    """Contour truncation and node density for integrals over nu = i t."""

    t_max: float = 40.0
    nodes_per_unit: int = 16
    rel_tol: float = 1e-7
    panel_width: float = 1.0
    bessel: BesselEvalSpec = DEFAULT_BESSEL_SPEC

    def __post_init__(self):
        if not self.t_max > 0:
            raise DomainError("t_max must be positive")
        if self.t_max > self.bessel.t_limit:
            raise DomainError("t_max exceeds the Bessel validity domain")
        if self.nodes_per_unit < 10:
            raise DomainError("need at least 10 nodes per unit of t")

    @property
    def order(self) -> int:
        return max(4, int(round(self.nodes_per_unit * self.panel_width)))


@dataclass(frozen=True)
class KLResult:
    value: complex
    t_max: float
    nodes: int
    odd_part: float


@dataclass(frozen=True)
class PlaneWaveMomenta:
    k1: complex
    k2: complex
    k3: complex


def _offsets(theta, j):
    """Angles measured from the centres of sectors j-1, j+1 and j."""
    base = np.asarray(theta, dtype=float) - j * np.pi / 3
    return base + np.pi / 3, base - np.pi / 3, base


def psi_closed_form(p: HyperPoint, energy: ChannelEnergy, sol: ScatteringSolution, params: ModelParams) -> complex:
    """Six-exponential closed form in sector p.j, including the i pi/2 factor."""
    return complex(_psi_closed(p.R, p.theta, p.j, sol, params))


def _psi_closed(R, theta, j, sol, params):
    # -K R cosh(+-beta + i phi) = (pi c/6) R cos(phi) -+ i k R sin(phi)
    g = math.pi * params.c / 6
    k = sol.k
    pm, pp, p0 = _offsets(theta, j)
    R = np.asarray(R, dtype=float)

    def w(phi, sign):
        return np.exp(g * R * np.cos(phi) + sign * 1j * k * R * np.sin(phi))

    total = (
        w(pm, -1) + w(pp, +1)
        + sol.S * (w(pp, -1) + w(pm, +1))
        + sol.S3 * (w(p0, +1) + w(p0, -1))
    )
    return CLOSED_FORM_PREFACTOR * total


def psi_closed_form_cosh(R, theta, j, sol: ScatteringSolution):
    """The same closed form written with exp(-K R cosh(+-beta + i phi))."""
    pm, pp, p0 = _offsets(theta, j)
    KR = sol.K * np.asarray(R, dtype=float)
    b = sol.beta

    def e(sign, phi):
        return np.exp(-KR * np.cosh(sign * b + 1j * phi))

    total = (
        e(+1, pm) + e(-1, pp)
        + sol.S * (e(+1, pp) + e(-1, pm))
        + sol.S3 * (e(-1, p0) + e(+1, p0))
    )
    return CLOSED_FORM_PREFACTOR * total


def kl_admissible_offset(q: QuadratureSpec) -> float:
    """Largest |theta - j pi/3| for which the truncated contour meets rel_tol.

    The slowest part of the integrand decays like exp(-(pi/6 - |offset|) t), so
    it must drop by rel_tol before t_max.
    """
    rate = -math.log(q.rel_tol) / q.t_max
    return min(math.pi / 6 - KL_LINE_MARGIN, max(0.0, math.pi / 6 - rate))


def _check_kl_point(p: HyperPoint, q: QuadratureSpec) -> float:
    off = abs(p.offset)
    if off > math.pi / 6 - KL_LINE_MARGIN:
        raise ConvergenceError(
            f"theta within pi/60 of a delta line (offset {off:.4f}); use the closed form there"
        )
    return off


def _even_coefficient(t, sol):
    nu = 1j * np.asarray(t, dtype=float)
    return 0.5 * (coefficient_A(nu, sol) + coefficient_A(-nu, sol))


def kl_integral(
    p: HyperPoint,
    energy: ChannelEnergy,
    sol: ScatteringSolution,
    params: ModelParams,
    q: QuadratureSpec = QuadratureSpec(),
    *,
    full_output: bool = False,
):
    """Integrate A(nu) S(nu, theta) K_nu(KR) over nu = i t numerically.

    Only the even part of A contributes on the symmetric contour, so the
    integral is 2i times the integral over t >= 0 of the even part.  Panels are
    added until the integrand stays below rel_tol times its running maximum
    for two consecutive panels.
    """
    off = _check_kl_point(p, q)
    x = energy.K * p.R
    if p.R <= 0:
        raise DomainError("KL representation needs R > 0")
    total = 0.0j
    odd = 0.0j
    peak = 0.0
    quiet = 0
    a = 0.0
    nodes = 0
    while True:
        b = min(a + q.panel_width, q.t_max)
        t, w = panel_rule(a, b, q.order)
        kv = bessel_k_imag_order(t, x, q.bessel)
        ang = np.cosh(off * t)
        f_even = _even_coefficient(t, sol) * ang * kv
        total += np.dot(w, f_even)
        if full_output:
            # odd part over [-T, T] with K evaluated independently at -t
            a_odd = 0.5 * (coefficient_A(1j * t, sol) - coefficient_A(-1j * t, sol))
            kv_neg = bessel_k_imag_order(-t, x, q.bessel)
            odd += np.dot(w, a_odd * ang * (kv - kv_neg))
        nodes += t.size
        mag = float(np.max(np.abs(f_even)))
        peak = max(peak, mag)
        if mag < q.rel_tol * peak:
            quiet += 1
        else:
            quiet = 0
        a = b
        if quiet >= 2:
            break
        if a >= q.t_max:
            raise AccuracyError(
                f"KL integrand not converged by t_max={q.t_max:g} "
                f"(offset {off:.4f}, last panel/peak {mag / peak:.2e})"
            )
    value = 2j * total
    if full_output:
        return KLResult(complex(value), a, nodes, abs(odd))
    return complex(value)


def kl_cosh_pair(w: complex, z: float, q: QuadratureSpec = QuadratureSpec()) -> complex:
    """int over nu = i t of cosh(w nu) K_nu(z); exact value is i pi exp(-z cosh w).

    Converges for |Im w| < pi/2.
    """
    w = complex(w)
    if abs(w.imag) >= math.pi / 2:
        raise ConvergenceError("cosh pair diverges for |Im w| >= pi/2")
    total = 0.0j
    peak = 0.0
    quiet = 0
    a = 0.0
    while True:
        b = min(a + q.panel_width, q.t_max)
        t, wt = panel_rule(a, b, q.order)
        f = np.cos(w * t) * bessel_k_imag_order(t, z, q.bessel)
        total += np.dot(wt, f)
        mag = float(np.max(np.abs(f)))
        peak = max(peak, mag)
        quiet = quiet + 1 if mag < q.rel_tol * peak else 0
        a = b
        if quiet >= 2:
            break
        if a >= q.t_max:
            raise AccuracyError("cosh pair not converged by t_max")
    return complex(2j * total)


def psi_asymptotic(p: HyperPoint, energy: ChannelEnergy, sol: ScatteringSolution, params: ModelParams) -> complex:
    """Bound pair times incoming plus S times outgoing wave, theta' = theta - (j-1) pi/3.

    Only the first pair of closed-form terms is kept, which dominates for
    theta' in (pi/3, pi/2); on (pi/6, pi/3] the dropped j+1 pair is as large.
    """
    tp = p.offset + math.pi / 3
    if not math.pi / 6 < tp < math.pi / 2:
        raise DomainError("theta' must lie strictly inside (pi/6, pi/2)")
    g = math.pi * params.c / 6
    kr = sol.k * p.R * math.sin(tp)
    return complex(math.exp(g * p.R * math.cos(tp)) * (np.exp(-1j * kr) + sol.S * np.exp(1j * kr)))


def boundary_condition_residual(
    R: float,
    energy: ChannelEnergy,
    sol: ScatteringSolution,
    params: ModelParams,
    j: int = 0,
    *,
    floor: float = 1e-200,
    h: float | None = None,
) -> float:
    """|(1/(R psi)) d psi/d theta + pi c/6| at theta -> theta_j from below."""
    if not R > 0:
        raise DomainError("R must be positive")
    theta_j = (2 * j + 1) * math.pi / 6
    psi_j = complex(_psi_closed(R, theta_j, j, sol, params))
    if abs(psi_j) < floor:
        raise DegenerateError("wavefunction vanishes at the probe point")
    step = 1e-3 * math.pi / 6 if h is None else h
    d, _ = one_sided_derivative(lambda th: complex(_psi_closed(R, th, j, sol, params)), theta_j, step)
    return abs(d / (R * psi_j) + math.pi * params.c / 6)


def plane_wave_momenta(energy: ChannelEnergy, params: ModelParams) -> PlaneWaveMomenta:
    b = math.pi * params.c / (6 * math.sqrt(2))
    k = energy.k
    k1 = complex(-k / math.sqrt(6), b)
    k2 = complex(-k / math.sqrt(6), -b)
    k3 = complex(math.sqrt(2 / 3) * k, 0.0)
    return PlaneWaveMomenta(k1, k2, k3)


def _plane_wave_sector0(y, m: PlaneWaveMomenta, sol: ScatteringSolution) -> complex:
    y1, y2, y3 = y
    k1, k2, k3 = m.k1, m.k2, m.k3

    def e(sign, a, b, c):
        return np.exp(sign * 1j * (a * y1 + b * y2 + c * y3))

    return complex(
        e(-1, k3, k2, k1) + e(+1, k2, k3, k1)
        + sol.S * (e(-1, k1, k3, k2) + e(+1, k3, k1, k2))
        + sol.S3 * (e(-1, k1, k2, k3) + e(+1, k2, k1, k3))
    )


def psi_plane_wave(cfg: ParticleConfig, energy: ChannelEnergy, sol: ScatteringSolution, params: ModelParams) -> complex:
    """Plane-wave sum for the sector that contains ``cfg``.

    The sector-0 expression holds for x2 < x3 < x1; elsewhere the positions
    are relabelled so that the active sector's ordering maps onto that one.
    """
    x = cfg.as_array()
    if len(set(x.tolist())) < 3:
        raise DomainError("configuration lies on a coalescence line")
    j = geo.config_to_point(cfg).j
    lo, mid, hi = geo.particle_order(j)
    ref_lo, ref_mid, ref_hi = geo.particle_order(0)
    y = np.empty(3)
    y[ref_lo - 1] = x[lo - 1]
    y[ref_mid - 1] = x[mid - 1]
    y[ref_hi - 1] = x[hi - 1]
    return _plane_wave_sector0(y, plane_wave_momenta(energy, params), sol)
