"""Particle positions, Jacobi coordinates and the hyperspherical plane.

Sector j (0..5) is the wedge |theta - j pi/3| <= pi/6 bounded by the
coalescence lines theta_j = (2j+1) pi/6.  A point lying exactly on theta_j
belongs to sector j, i.e. to the side approached from below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateError, DomainError

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
SECTOR_HALF_WIDTH = math.pi / 6
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ParticleConfig:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x1, self.x2, self.x3)):
            raise DomainError("particle positions must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class JacobiCoords:
    r: float
    eta: float
    xi: float


@dataclass(frozen=True)
class HyperPoint:
    R: float
    theta: float
    j: int

    def __post_init__(self):
        if self.R < 0:
            raise DomainError("hyperradius must be non-negative")
        if self.j not in range(6):
            raise DomainError(f"sector index must be in 0..5, got {self.j}")
        if abs(wrap_angle(self.theta - self.j * math.pi / 3)) > SECTOR_HALF_WIDTH + _TIE_TOL:
            raise DomainError(f"theta={self.theta!r} is not inside sector {self.j}")

    @property
    def offset(self) -> float:
        """Angle measured from the sector centre, in [-pi/6, pi/6]."""
        return wrap_angle(self.theta - self.j * math.pi / 3)


def wrap_angle(theta):
    """Map angles into (-pi, pi]."""
    w = np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), 2 * np.pi)
    return float(w) if np.ndim(w) == 0 else w


def line_angle(j: int) -> float:
    """theta_j = (2j+1) pi/6 wrapped into (-pi, pi]."""
    return wrap_angle((2 * j + 1) * math.pi / 6)


def to_jacobi(cfg: ParticleConfig) -> JacobiCoords:
    r = (cfg.x1 + cfg.x2 + cfg.x3) / 3
    eta = (cfg.x1 - cfg.x2) / SQRT2
    xi = math.sqrt(2 / 3) * (0.5 * (cfg.x1 + cfg.x2) - cfg.x3)
    return JacobiCoords(r, eta, xi)


def from_jacobi(jc: JacobiCoords) -> ParticleConfig:
    x1 = jc.r + jc.eta / SQRT2 + jc.xi / SQRT6
    x2 = jc.r - jc.eta / SQRT2 + jc.xi / SQRT6
    x3 = jc.r - 2 * jc.xi / SQRT6
    return ParticleConfig(x1, x2, x3)


def sector_of(theta) -> int:
    """Sector index of an angle; ties on a line go to the lower-side sector."""
    u = float(np.mod(theta, 2 * math.pi)) * 3 / math.pi - 0.5
    nearest = round(u)
    if abs(u - nearest) < _TIE_TOL:
        return int(nearest) % 6
    return int(math.ceil(u)) % 6


def to_hyperspherical(jc: JacobiCoords) -> HyperPoint:
    R = math.hypot(jc.eta, jc.xi)
    if R == 0.0:
        raise DegenerateError("hyperangle undefined at R = 0")
    theta = math.atan2(jc.xi, jc.eta)
    if theta == -math.pi:
        theta = math.pi
    return HyperPoint(R, theta, sector_of(theta))


def from_hyperspherical(p: HyperPoint, r: float = 0.0) -> JacobiCoords:
    return JacobiCoords(r, p.R * math.cos(p.theta), p.R * math.sin(p.theta))


@lru_cache(maxsize=6)
def particle_order(j: int) -> tuple[int, int, int]:
    """Particle labels in increasing position throughout sector ``j``.

    Derived by mapping the sector centre back to positions and sorting.
    """
    if j not in range(6):
        raise DomainError(f"sector index must be in 0..5, got {j}")
    th = j * math.pi / 3
    cfg = from_jacobi(JacobiCoords(0.0, math.cos(th), math.sin(th)))
    return tuple(int(i) + 1 for i in np.argsort(cfg.as_array()))


def config_to_point(cfg: ParticleConfig) -> HyperPoint:
    return to_hyperspherical(to_jacobi(cfg))
