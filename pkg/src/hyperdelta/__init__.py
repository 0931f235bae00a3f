"""Exact 2+1 scattering for three equal-mass particles with delta interactions.

Hyperspherical treatment: pseudo-Sturmian angular functions, the spectral
recurrence and its closed-form coefficient, the Kontorovich-Lebedev integral
for the wavefunction, and the closed-form S-matrix.
"""
from __future__ import annotations

__version__ = "0.1.0"

from ._accel import backend
from .errors import (
    AccuracyError,
    BracketError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    HyperDeltaError,
    PoleError,
)
from .geometry import (
    HyperPoint,
    JacobiCoords,
    ParticleConfig,
    config_to_point,
    from_hyperspherical,
    from_jacobi,
    particle_order,
    sector_of,
    to_hyperspherical,
    to_jacobi,
)
from .scattering import (
    ChannelEnergy,
    ScatteringSolution,
    channel_energy,
    coefficient_A,
    recurrence_residual,
    s3_coefficient,
    s_matrix,
    s_matrix_factored,
    s_matrix_pole,
    solve,
)
from .specfun import BesselEvalSpec, bessel_k, bessel_k_imag_order, bessel_k_real_order
from .sturmian import ModelParams, adiabatic_roots, rho, rho_curve, sturmian_fn
from .wavefunction import (
    QuadratureSpec,
    kl_integral,
    psi_asymptotic,
    psi_closed_form,
    psi_plane_wave,
)

__all__ = [name for name in dir() if not name.startswith("_")]
