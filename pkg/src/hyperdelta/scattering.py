"""2+1 channel: kinematics, the closed-form spectral coefficient and the S-matrix.

Orientation of S.  The recurrence for A(nu) fixes S only together with the
sign of the rapidity beta.  With beta >= 0 (cosh beta = -pi c/(6K),
sinh beta = k/K) the solution is

    S  = tan(pi/6 - i beta) cot(pi/6 + i beta)
       = (1 - 36 u^2 + i (24/sqrt 3) u) / (1 - 36 u^2 - i (24/sqrt 3) u),   u = k/(pi c)
       = (-1 - i lam k)(3 + i lam k) / ((-1 + i lam k)(3 - i lam k)),       lam = 6 sqrt3/(pi c)

and the reciprocal orientation leaves an O(1) residual in the recurrence
(see ``recurrence_residual``).  S3 = (3 + i lam k)/(-1 + i lam k).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, DomainError
from .sturmian import ModelParams, rho, sturmian_fn

__all__ = [
    "ChannelEnergy",
    "ScatteringSolution",
    "channel_energy",
    "beta_of",
    "solve",
    "s_matrix",
    "s_matrix_factored",
    "s_matrix_from_beta",
    "s3_coefficient",
    "s3_from_beta",
    "phase_shift",
    "coefficient_A",
    "coefficient_A_cosine",
    "recurrence_residual",
    "recurrence_residual_bform",
    "s_matrix_pole",
    "s_matrix_poles",
]

SQRT3 = math.sqrt(3.0)
COT_PI6 = SQRT3


@dataclass(frozen=True)
class ChannelEnergy:
    k: float
    K: float
    E: float


@dataclass(frozen=True)
class ScatteringSolution:
    """All coefficients of A(nu) = e^{-beta nu}(e^{-i pi nu/3} + S e^{i pi nu/3} + S3)."""

    k: float
    K: float
    beta: float
    S: complex
    S3: complex
    delta: float
    alpha: complex

    def with_inverted_s(self) -> "ScatteringSolution":
        """Same solution with S -> 1/S; a deliberate fault for canary checks."""
        return replace(self, S=1 / self.S)


def _lam(params: ModelParams) -> float:
    return 6 * SQRT3 / (math.pi * params.c)


def _open_channel(k: float, params: ModelParams) -> float:
    if not params.attractive:
        raise DomainError("the 2+1 channel needs an attractive coupling (c < 0)")
    k = float(k)
    k_thr = math.pi * abs(params.c) / 6
    if not 0 <= k < k_thr:
        raise DomainError(f"k={k!r} outside the open channel [0, {k_thr:.12g})")
    return k


def channel_energy(k: float, params: ModelParams) -> ChannelEnergy:
    k = _open_channel(k, params)
    K2 = (math.pi * params.c) ** 2 / 36 - k * k
    return ChannelEnergy(k, math.sqrt(K2), k * k - (math.pi * params.c) ** 2 / 36)


def beta_of(energy: ChannelEnergy, params: ModelParams) -> float:
    """Rapidity with cosh beta = -pi c/(6K), sinh beta = k/K.

    asinh(k/K) equals ln(cosh beta + sinh beta) but is exactly 0 at k = 0.
    """
    if params.c >= 0:
        raise DomainError("beta is defined for attractive coupling only")
    return math.asinh(energy.k / energy.K)


def s_matrix_from_beta(beta: float) -> complex:
    return cmath.tan(math.pi / 6 - 1j * beta) / cmath.tan(math.pi / 6 + 1j * beta)


def s3_from_beta(beta: float) -> complex:
    return -COT_PI6 / cmath.tan(math.pi / 6 + 1j * beta)


def s_matrix(k: float, params: ModelParams) -> complex:
    """Canonical S(k) as a ratio of complex-conjugate polynomials in k."""
    k = _open_channel(k, params)
    u = k / (math.pi * params.c)
    re = 1 - 36 * u * u
    im = 24 / SQRT3 * u
    return complex(re, im) / complex(re, -im)


def s_matrix_factored(k: float, params: ModelParams) -> complex:
    """S(k) written as the product of two-body-like factors."""
    k = _open_channel(k, params)
    z = 1j * _lam(params) * k
    return (-1 - z) * (3 + z) / ((-1 + z) * (3 - z))


def s3_coefficient(k: float, params: ModelParams) -> complex:
    k = _open_channel(k, params)
    z = 1j * _lam(params) * k
    return (3 + z) / (-1 + z)


def phase_shift(S: complex) -> float:
    """delta in (-pi/2, pi/2] with S = exp(2 i delta)."""
    d = 0.5 * cmath.phase(S)
    return d - math.pi if d > math.pi / 2 else d


def _alpha(beta: float, S: complex, S3: complex, delta: float) -> complex:
    principal = -0.5 * COT_PI6 * cmath.sqrt(
        1 / cmath.tan(math.pi / 6 - 1j * beta) / cmath.tan(math.pi / 6 + 1j * beta)
    )
    # sign fixed once at nu = 0 by matching e^{i delta} * cosine form to 1 + S + S3
    target = 1 + S + S3
    cands = (principal, -principal)
    errs = [abs(2 * cmath.exp(1j * delta) * (math.cos(delta) + a) - target) for a in cands]
    return cands[int(np.argmin(errs))]


def solve(k: float, params: ModelParams) -> ScatteringSolution:
    energy = channel_energy(k, params)
    beta = beta_of(energy, params)
    S = s_matrix(k, params)
    S3 = s3_coefficient(k, params)
    delta = phase_shift(S)
    return ScatteringSolution(energy.k, energy.K, beta, S, S3, delta, _alpha(beta, S, S3, delta))


def coefficient_A(nu, sol: ScatteringSolution):
    nu = np.asarray(nu, dtype=complex) if np.ndim(nu) else complex(nu)
    e = np.exp(1j * np.pi * nu / 3)
    return np.exp(-sol.beta * nu) * (1 / e + sol.S * e + sol.S3)


def coefficient_A_cosine(nu, sol: ScatteringSolution):
    """2 e^{-beta nu} [cos(pi nu/3 + delta) + alpha].

    Equals ``coefficient_A`` divided by the constant e^{i delta}.
    """
    nu = np.asarray(nu, dtype=complex) if np.ndim(nu) else complex(nu)
    return 2 * np.exp(-sol.beta * nu) * (np.cos(np.pi * nu / 3 + sol.delta) + sol.alpha)


def recurrence_residual(A, nu: complex, energy: ChannelEnergy, params: ModelParams) -> float:
    """Relative residual of the three-term recurrence in sine/cosine form.

    A(nu+1) sin((nu+1) pi/6) - A(nu-1) sin((nu-1) pi/6) + (pi c/(3K)) A(nu) cos(nu pi/6)
    """
    nu = complex(nu)
    t1 = A(nu + 1) * cmath.sin((nu + 1) * math.pi / 6)
    t2 = A(nu - 1) * cmath.sin((nu - 1) * math.pi / 6)
    t3 = math.pi * params.c / (3 * energy.K) * A(nu) * cmath.cos(nu * math.pi / 6)
    scale = max(abs(t1), abs(t2), abs(t3))
    if scale == 0:
        return 0.0
    return abs(t1 - t2 + t3) / scale


def recurrence_residual_bform(A, nu: complex, energy: ChannelEnergy, params: ModelParams, j: int = 0) -> float:
    """Same recurrence written with B = A/nu, rho(nu) and S(nu, theta_j).

    B(nu-1) rho(nu-1) S(nu-1) - B(nu+1) rho(nu+1) S(nu+1) - (2 nu/K) B(nu) S(nu).
    Undefined at nu in {0, +-1} and where nu +- 1 hits a pole of rho.
    """
    nu = complex(nu)
    if min(abs(nu), abs(nu - 1), abs(nu + 1)) < 1e-3:
        raise DomainError("B-form is singular at nu in {0, 1, -1}")
    theta_j = (2 * j + 1) * math.pi / 6

    def term(m):
        return A(m) / m * rho(m, params) * sturmian_fn(m, theta_j, j)

    t1 = term(nu - 1)
    t2 = term(nu + 1)
    t3 = 2 * nu / energy.K * A(nu) / nu * sturmian_fn(nu, theta_j, j)
    scale = max(abs(t1), abs(t2), abs(t3))
    if scale == 0:
        return 0.0
    return abs(t1 - t2 - t3) / scale


def _denominator(k: complex, params: ModelParams) -> complex:
    z = 1j * _lam(params) * k
    return (-1 + z) * (3 - z)


def _newton_root(params: ModelParams, k0: complex, tol: float = 1e-15, maxiter: int = 100) -> complex:
    k = complex(k0)
    for _ in range(maxiter):
        f = _denominator(k, params)
        h = 1e-7 * max(1.0, abs(k))
        df = (_denominator(k + h, params) - _denominator(k - h, params)) / (2 * h)
        step = f / df
        k -= step
        if abs(step) <= tol * max(1.0, abs(k)):
            return k
    raise ConvergenceError("Newton iteration for the S-matrix pole did not converge")


def s_matrix_poles(params: ModelParams) -> list[complex]:
    """Upper-half-plane zeros of the S(k) denominator, found numerically."""
    if not params.attractive:
        raise DomainError("poles are tabulated for attractive coupling only")
    scale = math.pi * abs(params.c) / 6
    # the two zeros sit at i/sqrt3 and i sqrt3 in units of the threshold momentum
    roots = [_newton_root(params, s * scale) for s in (0.2j, 2.5j)]
    return sorted((r for r in roots if r.imag > 0), key=lambda z: z.imag)


def s_matrix_pole(params: ModelParams) -> tuple[complex, float]:
    """Zero of the (-1 + i lam k) factor and its energy k^2 - (pi c)^2/36."""
    k_pole = s_matrix_poles(params)[0]
    k_pole = complex(0.0, k_pole.imag) if abs(k_pole.real) < 1e-14 else k_pole
    energy = (k_pole * k_pole).real - (math.pi * params.c) ** 2 / 36
    return k_pole, energy
