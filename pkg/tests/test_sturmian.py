import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from hyperdelta import sturmian as st
from hyperdelta.errors import DomainError, PoleError


def test_model_params():
    p = st.ModelParams(-0.7)
    assert p.attractive
    assert p.a * (math.pi * p.c / 6) == pytest.approx(1.0)
    assert p.log_derivative == pytest.approx(-1 / p.a)
    with pytest.raises(DomainError):
        st.ModelParams(0.0)
    with pytest.raises(DomainError):
        st.ModelParams(math.inf)


def test_sturmian_examples():
    assert st.sturmian_fn(3.7 + 1j, 0.0, 0) == 1
    assert st.sturmian_fn(2.0, math.pi / 6, 0) == pytest.approx(0.5)
    assert st.sturmian_fn(1j, math.pi / 12, 0) == pytest.approx(1.03446, abs=1e-5)
    assert st.sturmian_fn(1j, math.pi / 12, 0) == pytest.approx(math.cosh(math.pi / 12), rel=1e-15)


def test_sturmian_outside_sector():
    with pytest.raises(DomainError):
        st.sturmian_fn(1.0, 0.6, 0)


@settings(max_examples=80, deadline=None)
@given(re=st_.floats(-6, 6), im=st_.floats(-6, 6), d=st_.floats(0, math.pi / 6), j=st_.integers(0, 5))
def test_sturmian_even_about_centre(re, im, d, j):
    nu = complex(re, im)
    c = j * math.pi / 3
    assert st.sturmian_fn(nu, c + d, j) == pytest.approx(st.sturmian_fn(nu, c - d, j), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("j", range(6))
def test_sturmian_continuous_across_lines(j):
    th = (2 * j + 1) * math.pi / 6
    for nu in (0.7, 2.3 + 1j, 4j):
        left = st.sturmian_fn(nu, th, j)
        right = st.sturmian_fn(nu, th, (j + 1) % 6)
        assert left == pytest.approx(right, rel=1e-13)


def test_rho_examples():
    small = 1e-4
    assert st.rho(small, st.ModelParams(1.0)) == pytest.approx(small**2, rel=1e-6)
    assert st.rho(1.0, st.ModelParams(6 / math.pi)) == pytest.approx(1 / math.sqrt(3), rel=1e-15)
    assert st.rho(1j, st.ModelParams(-6 / math.pi)) == pytest.approx(0.48047, abs=1e-5)
    assert st.rho(0.0, st.ModelParams(1.0)) == 0


def test_rho_pole():
    with pytest.raises(PoleError):
        st.rho(3.0, st.ModelParams(1.0))
    with pytest.raises(PoleError):
        st.rho(-9.0, st.ModelParams(1.0))


@settings(max_examples=80, deadline=None)
@given(t=st_.floats(-20, 20), c=st_.sampled_from([-1.0, -0.3, 0.7, 2.0]))
def test_rho_real_on_axes(t, c):
    p = st.ModelParams(c)
    v = st.rho(1j * t, p)
    assert abs(v.imag) <= 1e-12 * max(1.0, abs(v))
    if abs(((t - 3) / 6) - round((t - 3) / 6)) > 1e-3:
        w = st.rho(t, p)
        assert abs(w.imag) <= 1e-12 * max(1.0, abs(w))


def test_rho_vectorised_matches_scalar():
    nus = np.array([0.5, 2j, 1 + 1j])
    p = st.ModelParams(-1.0)
    assert np.allclose(st.rho(nus, p), [st.rho(n, p) for n in nus])


@pytest.mark.parametrize("nu,c", [(1.0, 1.0), (1j, -1.0), (2.0, -0.5)])
def test_boundary_residual_examples(nu, c):
    assert st.boundary_residual(nu, st.ModelParams(c)) < 1e-8


def test_boundary_residual_against_analytic_derivative():
    # analytic: S'/S at theta_0 = -nu tan(nu pi/6); must equal rho(nu) * (-pi c/6)
    p = st.ModelParams(-0.4)
    for nu in (0.3, 1.9, 2.5j):
        ratio = -nu * cmath.tan(nu * math.pi / 6) / st.rho(nu, p)
        assert ratio == pytest.approx(p.log_derivative, rel=1e-14)


@pytest.mark.parametrize("c", [-1.0, -0.3, 0.7])
def test_boundary_residual_grid(c):
    p = st.ModelParams(c)
    nus = list(np.linspace(0.1, 8.5, 20)) + list(1j * np.linspace(0.1, 8.0, 20))
    assert max(st.boundary_residual(nu, p, j) for nu in nus for j in (0, 3)) < 1e-8


def test_imaginary_root_example():
    roots = st.adiabatic_roots(10.0, st.ModelParams(-1.0))
    tau = roots[0].q.imag
    assert roots[0].kappa == 0 and roots[0].is_imaginary
    assert tau == pytest.approx(5.28, abs=5e-3)
    # independent bisection oracle
    lo, hi = 0.0, 20.0
    f = lambda x: x * math.tanh(math.pi * x / 6) - math.pi * 10 / 6  # noqa: E731
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
    assert tau == pytest.approx(lo, abs=1e-12)


@pytest.mark.parametrize("c", [-1.0, 0.8])
@pytest.mark.parametrize("Rp", [0.05, 1.0, 7.0, 60.0])
def test_roots_satisfy_equation_and_brackets(c, Rp):
    p = st.ModelParams(c)
    roots = st.adiabatic_roots(Rp, p, kappa_max=24)
    assert [r.kappa for r in roots] == [0, 6, 12, 18, 24]
    for r in roots:
        lhs = r.q * cmath.tan(math.pi * r.q / 6)
        assert abs(lhs - math.pi * Rp * c / 6) <= 1e-9 * max(1.0, Rp)
        assert r.Lambda == pytest.approx(((r.q * r.q).real - 0.25) / Rp**2, rel=1e-14)
        if r.kappa >= 6:
            assert r.kappa - 3 < r.q.real < r.kappa + 3 and r.q.imag == 0
    if c > 0:
        assert 0 < roots[0].q.real < 3 and not roots[0].is_imaginary


def test_duality_with_rho():
    p = st.ModelParams(-1.0)
    for Rp in (0.2, 3.0, 40.0):
        for r in st.adiabatic_roots(Rp, p, kappa_max=12):
            assert st.rho(r.q, p) == pytest.approx(Rp, rel=1e-10)


def test_weak_coupling_limit():
    Rp = 1e-3
    for c in (-1e-6, 1e-6):
        for r in st.adiabatic_roots(Rp, st.ModelParams(c), kappa_max=18):
            free = (r.kappa**2 - 0.25) / Rp**2
            assert abs(r.Lambda - free) <= 1e-8 * abs(free)


def test_large_radius_limit():
    p = st.ModelParams(-1.0)
    Rp = 1e3 * 6 / math.pi
    lam0 = st.adiabatic_roots(Rp, p)[0].Lambda
    assert lam0 == pytest.approx(-(math.pi / 6) ** 2, rel=1e-6)


def test_bad_radius():
    with pytest.raises(DomainError):
        st.adiabatic_roots(0.0, st.ModelParams(-1.0))


def test_rho_curve_imaginary_axis():
    rows = st.rho_curve(1j * np.linspace(0, 8, 41), st.ModelParams(-1.0))
    assert all(abs(r["rho"].imag) < 1e-12 for r in rows)
    assert rows[0]["rho"] == 0
    checked = [r["fig2_residual"] for r in rows if np.isfinite(r["fig2_residual"])]
    assert len(checked) > 30 and max(checked) < 1e-10


def test_rho_curve_real_axis_positive_increasing():
    rows = st.rho_curve(np.linspace(0.01, 2.99, 60), st.ModelParams(1.0))
    vals = np.array([r["rho"].real for r in rows])
    assert np.all(vals > 0) and np.all(np.diff(vals) > 0)
    assert max(r["fig2_residual"] for r in rows) < 1e-10


def test_rho_curve_flags_poles():
    rows = st.rho_curve([2.5, 3.0, 9.0, 10.0], st.ModelParams(1.0))
    assert [r["pole"] for r in rows] == [False, True, True, False]
    assert len(rows) == 4


def test_rho_curve_rejects_off_axis():
    with pytest.raises(DomainError):
        st.rho_curve([1 + 1j], st.ModelParams(1.0))
