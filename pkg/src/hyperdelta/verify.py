"""Invariant suite behind the ``verify`` command.

Each check returns the worst residual it saw; the caller compares it with the
tolerance.  ``fault="invert_s"`` swaps S for 1/S everywhere the closed-form
solution is used, which must make the recurrence and boundary checks fail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry as geo
from . import scattering as sc
from . import specfun as sf
from . import sturmian as st
from . import wavefunction as wf

DEFAULT_K = (0.0, 0.1, 0.3, 0.45)
DEFAULT_R = (0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_residual) and self.max_residual <= self.tolerance)


@dataclass
class SuiteContext:
    params: st.ModelParams
    k_values: tuple
    R_values: tuple
    fault: str = "none"
    seed: int = 20240607
    kl_points: int = 6

    def solution(self, k: float) -> sc.ScatteringSolution:
        sol = sc.solve(k, self.params)
        return sol.with_inverted_s() if self.fault == "invert_s" else sol


def _bessel_evenness(ctx):
    worst = 0.0
    for t in (0.5, 3.0, 12.0, 35.0):
        for x in (0.1, 1.0, 7.0):
            kp = sf.bessel_k_imag_order(t, x)
            km = sf.bessel_k_imag_order(-t, x)
            worst = max(worst, abs(kp - km) / abs(kp))
    return worst


def _bessel_realness(ctx):
    worst = 0.0
    for t in (0.5, 3.0, 12.0, 35.0):
        for x in (0.1, 1.0, 7.0):
            v = sf.bessel_k(1j * t, x)
            worst = max(worst, abs(v.imag) / abs(v))
    return worst


def _bessel_recurrence(ctx):
    ts = np.linspace(0.1, 10.0, 12)
    xs = np.geomspace(0.1, 20.0, 8)
    return max(sf.bessel_recurrence_residual(t, x) for t in ts for x in xs)


def _bessel_half_order(ctx):
    worst = 0.0
    for x in (0.01, 0.3, 1.0, 4.0, 25.0):
        exact = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        worst = max(worst, abs(sf.bessel_k_real_order(0.5, x) - exact) / exact)
    return worst


def _sturmian_boundary(ctx):
    worst = 0.0
    nus = [complex(v) for v in np.linspace(0.15, 8.5, 20)] + [1j * v for v in np.linspace(0.1, 6.0, 20)]
    for c in (-1.0, -0.3, 0.7):
        params = st.ModelParams(c * abs(ctx.params.c))
        worst = max(worst, max(st.boundary_residual(nu, params) for nu in nus))
    return worst


def _nu_samples(seed: int):
    rng = np.random.default_rng(seed)
    r = 5.0 * np.sqrt(rng.uniform(0, 1, 50))
    ph = rng.uniform(0, 2 * np.pi, 50)
    return list(1j * np.linspace(0.0, 10.0, 101)) + list(r * np.exp(1j * ph))


def _recurrence(ctx):
    worst = 0.0
    nus = _nu_samples(ctx.seed)
    for k in ctx.k_values:
        sol = ctx.solution(k)
        energy = sc.channel_energy(k, ctx.params)
        A = lambda nu, s=sol: sc.coefficient_A(nu, s)  # noqa: E731
        worst = max(worst, max(sc.recurrence_residual(A, nu, energy, ctx.params) for nu in nus))
    return worst


def _recurrence_forms(ctx):
    worst = 0.0
    nus = [nu for nu in _nu_samples(ctx.seed + 1) if min(abs(nu), abs(nu - 1), abs(nu + 1)) > 1e-3]
    for k in ctx.k_values:
        sol = ctx.solution(k)
        energy = sc.channel_energy(k, ctx.params)
        A = lambda nu, s=sol: sc.coefficient_A(nu, s)  # noqa: E731
        for nu in nus:
            a = sc.recurrence_residual(A, nu, energy, ctx.params)
            b = sc.recurrence_residual_bform(A, nu, energy, ctx.params)
            worst = max(worst, abs(a - b))
    return worst


def _k_grid(ctx, n=100):
    thr = math.pi * abs(ctx.params.c) / 6
    return np.linspace(0.0, thr, n + 1, endpoint=False)[1:]


def _unitarity(ctx):
    return max(abs(abs(sc.s_matrix(k, ctx.params)) - 1) for k in _k_grid(ctx))


def _s_forms(ctx):
    worst = 0.0
    for k in _k_grid(ctx):
        s = sc.s_matrix(k, ctx.params)
        beta = sc.beta_of(sc.channel_energy(k, ctx.params), ctx.params)
        worst = max(worst, abs(s - sc.s_matrix_factored(k, ctx.params)), abs(s - sc.s_matrix_from_beta(beta)))
    return worst


def _wave_boundary(ctx):
    worst = 0.0
    for k in ctx.k_values:
        sol = ctx.solution(k)
        energy = sc.channel_energy(k, ctx.params)
        for R in ctx.R_values:
            for j in range(6):
                worst = max(worst, wf.boundary_condition_residual(R, energy, sol, ctx.params, j))
    return worst


def _random_configs(seed, n=20):
    rng = np.random.default_rng(seed)
    return [geo.ParticleConfig(*rng.uniform(-4, 4, 3)) for _ in range(n)]


def _plane_wave(ctx):
    worst = 0.0
    for k in ctx.k_values:
        sol = ctx.solution(k)
        energy = sc.channel_energy(k, ctx.params)
        ratios = []
        for cfg in _random_configs(ctx.seed):
            pw = wf.psi_plane_wave(cfg, energy, sol, ctx.params)
            cf = wf.psi_closed_form(geo.config_to_point(cfg), energy, sol, ctx.params)
            ratios.append(cf / pw)
        ratios = np.array(ratios)
        worst = max(worst, float(np.max(np.abs(ratios / ratios[0] - 1))))
    return worst


def _momenta(ctx):
    worst = 0.0
    for k in ctx.k_values:
        energy = sc.channel_energy(k, ctx.params)
        m = wf.plane_wave_momenta(energy, ctx.params)
        worst = max(worst, abs(m.k1 + m.k2 + m.k3), abs(m.k1**2 + m.k2**2 + m.k3**2 - energy.E))
    return worst


def _fig2(ctx):
    grid = list(1j * np.linspace(0.05, 8.0, 40)) + list(np.linspace(0.05, 11.5, 60))
    rows = st.rho_curve(grid, ctx.params)
    vals = [r["fig2_residual"] for r in rows if np.isfinite(r["fig2_residual"])]
    return max(vals) if vals else math.inf


def _adiabatic_duality(ctx):
    worst = 0.0
    for Rp in (0.1, 1.0, 10.0, 100.0):
        for root in st.adiabatic_roots(Rp, ctx.params, 18):
            worst = max(worst, abs(st.rho(root.q, ctx.params) - Rp) / Rp)
    return worst


def _kl_inversion(ctx):
    q = wf.QuadratureSpec()
    lim = 0.9 * wf.kl_admissible_offset(q)
    rng = np.random.default_rng(ctx.seed)
    k = ctx.k_values[min(2, len(ctx.k_values) - 1)]
    sol = ctx.solution(k)
    energy = sc.channel_energy(k, ctx.params)
    ratios = []
    for _ in range(ctx.kl_points):
        j = int(rng.integers(6))
        th = geo.wrap_angle(j * math.pi / 3 + rng.uniform(-lim, lim))
        p = geo.HyperPoint(float(rng.uniform(0.5, 5.0)), th, j)
        ratios.append(wf.kl_integral(p, energy, sol, ctx.params, q) / wf.psi_closed_form(p, energy, sol, ctx.params))
    ratios = np.array(ratios)
    return float(np.max(np.abs(ratios / ratios[0] - 1)))


def _pole(ctx):
    k_pole, energy = sc.s_matrix_pole(ctx.params)
    exact = 1j * math.pi * abs(ctx.params.c) / (6 * math.sqrt(3))
    return max(abs(k_pole - exact), abs(energy + (math.pi * ctx.params.c) ** 2 / 27))


CHECKS: list[tuple[str, Callable, float]] = [
    ("bessel_evenness", _bessel_evenness, 1e-12),
    ("bessel_realness", _bessel_realness, 1e-12),
    ("bessel_recurrence", _bessel_recurrence, 1e-8),
    ("bessel_half_order", _bessel_half_order, 1e-12),
    ("sturmian_boundary", _sturmian_boundary, 1e-8),
    ("recurrence_closed_form", _recurrence, 1e-10),
    ("recurrence_forms_agree", _recurrence_forms, 1e-12),
    ("s_matrix_unitarity", _unitarity, 1e-12),
    ("s_matrix_forms", _s_forms, 1e-12),
    ("wavefunction_boundary", _wave_boundary, 1e-6),
    ("plane_wave_equivalence", _plane_wave, 1e-10),
    ("momentum_identities", _momenta, 1e-14),
    ("fig2_relation", _fig2, 1e-10),
    ("adiabatic_duality", _adiabatic_duality, 1e-10),
    ("kl_inversion", _kl_inversion, 1e-6),
    ("s_matrix_pole", _pole, 1e-10),
]


def run_suite(ctx: SuiteContext, tolerance: float | None = None) -> list[CheckResult]:
    results = []
    for name, fn, tol in CHECKS:
        try:
            resid = float(fn(ctx))
        except ArithmeticError:
            resid = math.inf
        results.append(CheckResult(name, resid, tol if tolerance is None else tolerance))
    return results
