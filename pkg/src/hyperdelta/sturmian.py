"""Angular problem: pseudo-Sturmian functions, rho(nu) and adiabatic roots.

Units are 2m = hbar = 1.  The coupling ``c`` is negative for attraction; the
delta lines enter only through the log-derivative jump -pi c / 6 at each
theta_j.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, DegenerateError, DomainError, PoleError
from .geometry import SECTOR_HALF_WIDTH, wrap_angle
from .quadrature import one_sided_derivative

__all__ = [
    "ModelParams",
    "SturmianValue",
    "AdiabaticRoot",
    "sturmian_fn",
    "rho",
    "boundary_residual",
    "adiabatic_roots",
    "rho_curve",
]

_SECTOR_TOL = 1e-12
_POLE_TOL = 1e-12
ROOT_EPS = 1e-9
ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Interaction coefficient c and its derived length a = 6/(pi c)."""

    c: float

    def __post_init__(self):
        if not math.isfinite(self.c) or self.c == 0:
            raise DomainError("coupling c must be finite and non-zero")

    @property
    def a(self) -> float:
        return 6.0 / (math.pi * self.c)

    @property
    def attractive(self) -> bool:
        return self.c < 0

    @property
    def log_derivative(self) -> float:
        """Boundary value -1/a = -pi c / 6 of the one-sided log-derivative."""
        return -math.pi * self.c / 6.0

    @property
    def dimer_energy(self) -> float:
        return -((math.pi * self.c) ** 2) / 36.0


@dataclass(frozen=True)
class SturmianValue:
    nu: complex
    rho: complex
    pole: bool = False


@dataclass(frozen=True)
class AdiabaticRoot:
    kappa: int
    q: complex
    R_prime: float
    Lambda: float

    @property
    def is_imaginary(self) -> bool:
        return self.q.real == 0 and self.q.imag != 0


def sturmian_fn(nu, theta: float, j: int):
    """Unnormalised pseudo-Sturmian S(nu, theta) = cos((theta - j pi/3) nu)."""
    off = wrap_angle(theta - j * math.pi / 3)
    if abs(off) > SECTOR_HALF_WIDTH + _SECTOR_TOL:
        raise DomainError(f"theta={theta!r} lies outside sector {j}")
    return np.cos(off * np.asarray(nu, dtype=complex)) if np.ndim(nu) else cmath.cos(off * nu)


def _rho_scalar(nu: complex, c: float) -> complex:
    nu = complex(nu)
    cos_half = cmath.cos(nu * math.pi / 6)
    if abs(cos_half) < _POLE_TOL:
        raise PoleError(f"rho(nu) has a pole at nu={nu!r}")
    return 6.0 / (math.pi * c) * nu * cmath.sin(nu * math.pi / 6) / cos_half


def rho(nu, params: ModelParams):
    """rho(nu) = (6/(pi c)) nu tan(nu pi/6)."""
    if np.ndim(nu):
        return np.array([_rho_scalar(v, params.c) for v in np.ravel(nu)]).reshape(np.shape(nu))
    return _rho_scalar(nu, params.c)


def boundary_residual(nu: complex, params: ModelParams, j: int = 0, h: float | None = None) -> float:
    """|lim_{theta -> theta_j^-} S'/(rho S) + pi c/6| by extrapolated differences."""
    r = _rho_scalar(nu, params.c)
    if r == 0:
        raise DegenerateError("rho(nu) = 0: boundary condition is void")
    theta_j = (2 * j + 1) * math.pi / 6
    step = 1e-3 * math.pi / 6 if h is None else h
    ds, _ = one_sided_derivative(lambda th: sturmian_fn(nu, th, j), theta_j, step)
    s_j = sturmian_fn(nu, theta_j, j)
    if s_j == 0:
        raise DegenerateError("S(nu, theta_j) vanishes")
    return abs(ds / (r * s_j) + math.pi * params.c / 6)


def _imaginary_root(R_prime: float, c: float) -> float:
    target = math.pi * R_prime * abs(c) / 6
    hi = target + 10.0
    return brentq(lambda tau: tau * math.tanh(math.pi * tau / 6) - target, 0.0, hi,
                  xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=500)


def _real_root(lo: float, hi: float, target: float) -> float:
    f = lambda q: q * math.tan(math.pi * q / 6) - target  # noqa: E731
    # scan for the sign change instead of assuming where the root sits
    grid = np.linspace(lo, hi, 65)
    vals = np.array([f(q) for q in grid])
    idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    if idx.size == 0:
        raise BracketError(f"no sign change of q tan(pi q/6) - {target:g} in ({lo}, {hi})")
    i = idx[0]
    if vals[i] == 0:
        return float(grid[i])
    return brentq(f, grid[i], grid[i + 1], xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=500)


def adiabatic_roots(R_prime: float, params: ModelParams, kappa_max: int = 0) -> list[AdiabaticRoot]:
    """Roots q_kappa of q tan(pi q/6) = pi R' c/6 and Lambda = (q^2 - 1/4)/R'^2.

    Channel kappa = 0 is the imaginary root i tau for attraction and the real
    root in (0, 3) for repulsion; kappa = 6, 12, ... sit in (kappa-3, kappa+3).
    """
    if not R_prime > 0:
        raise DomainError("R' must be positive")
    c = params.c
    target = math.pi * R_prime * c / 6
    out = []
    if params.attractive:
        tau = _imaginary_root(R_prime, c)
        q = complex(0.0, tau)
        out.append(AdiabaticRoot(0, q, R_prime, (-tau * tau - 0.25) / R_prime**2))
    else:
        q0 = _real_root(ROOT_EPS, 3 - ROOT_EPS, target)
        out.append(AdiabaticRoot(0, complex(q0), R_prime, (q0 * q0 - 0.25) / R_prime**2))
    for kappa in range(6, int(kappa_max) + 1, 6):
        q = _real_root(kappa - 3 + ROOT_EPS, kappa + 3 - ROOT_EPS, target)
        out.append(AdiabaticRoot(kappa, complex(q), R_prime, (q * q - 0.25) / R_prime**2))
    return out


def rho_curve(nu_grid, params: ModelParams, pole_margin: float = 1e-6) -> list[dict]:
    """Tabulate rho along the real or imaginary nu axis.

    Each row carries the Lambda that the adiabatic equation at R' = rho
    delivers, so nu^2 = Lambda rho^2 + 1/4 can be checked where rho > 0.
    """
    nus = np.asarray(nu_grid, dtype=complex)
    on_axis = (np.abs(nus.real) == 0) | (np.abs(nus.imag) == 0)
    if not np.all(on_axis):
        raise DomainError("rho_curve grid must lie on the real or the imaginary axis")
    rows = []
    for nu in nus:
        near_pole = nu.imag == 0 and abs(((nu.real - 3) / 6) - round((nu.real - 3) / 6)) * 6 < pole_margin
        row = {"nu": complex(nu), "rho": complex(math.nan, math.nan), "Lambda": math.nan,
               "fig2_residual": math.nan, "pole": bool(near_pole)}
        if not near_pole:
            r = _rho_scalar(nu, params.c)
            row["rho"] = r
            if abs(r.imag) <= 1e-12 * max(1.0, abs(r)) and r.real > 0:
                lam = _lambda_at(nu, r.real, params)
                row["Lambda"] = lam
                row["fig2_residual"] = abs((nu * nu).real - (lam * r.real**2 + 0.25))
        rows.append(row)
    return rows


def _lambda_at(nu: complex, R_prime: float, params: ModelParams) -> float:
    """Adiabatic Lambda at R' whose channel bracket contains ``nu``."""
    if nu.imag != 0:
        tau = _imaginary_root(R_prime, params.c)
        return (-tau * tau - 0.25) / R_prime**2
    x = abs(nu.real)
    kappa = 6 * int(round(x / 6))
    if kappa == 0:
        q = _real_root(ROOT_EPS, 3 - ROOT_EPS, math.pi * R_prime * params.c / 6)
    else:
        lo, hi = kappa - 3 + ROOT_EPS, kappa + 3 - ROOT_EPS
        q = _real_root(lo, hi, math.pi * R_prime * params.c / 6)
    return (q * q - 0.25) / R_prime**2
