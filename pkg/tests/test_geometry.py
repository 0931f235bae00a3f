import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hyperdelta import geometry as geo
from hyperdelta.errors import DegenerateError, DomainError

coord = st.floats(-50, 50, allow_nan=False)


@pytest.mark.parametrize("x,expected", [
    ((1, -1, 0), (0.0, math.sqrt(2), 0.0)),
    ((0, 0, 0), (0.0, 0.0, 0.0)),
    ((0, 1, 2), (1.0, -1 / math.sqrt(2), -math.sqrt(1.5))),
])
def test_to_jacobi_examples(x, expected):
    jc = geo.to_jacobi(geo.ParticleConfig(*x))
    assert (jc.r, jc.eta, jc.xi) == pytest.approx(expected, abs=1e-15)
    back = geo.from_jacobi(jc)
    assert back.as_array() == pytest.approx(np.array(x, dtype=float), abs=1e-14)


def test_to_hyperspherical_examples():
    p = geo.to_hyperspherical(geo.JacobiCoords(0, math.sqrt(2), 0))
    assert (p.R, p.theta, p.j) == (pytest.approx(math.sqrt(2)), 0.0, 0)

    p = geo.to_hyperspherical(geo.JacobiCoords(0, 0, 1))
    assert p.theta == pytest.approx(math.pi / 2)
    assert p.j == 1  # on theta_1, owned by the sector below the line

    p = geo.to_hyperspherical(geo.JacobiCoords(0, -1 / math.sqrt(2), -math.sqrt(1.5)))
    assert p.R == pytest.approx(math.sqrt(2))
    assert p.theta == pytest.approx(-2 * math.pi / 3)
    assert p.R * math.cos(p.theta) == pytest.approx(-1 / math.sqrt(2))


def test_origin_is_degenerate():
    with pytest.raises(DegenerateError):
        geo.to_hyperspherical(geo.JacobiCoords(1.0, 0.0, 0.0))


def test_theta_minus_pi_maps_to_pi():
    p = geo.to_hyperspherical(geo.JacobiCoords(0, -1.0, -0.0))
    assert p.theta == math.pi


@pytest.mark.parametrize("theta,j", [(0.0, 0), (math.pi / 3, 1), (-2 * math.pi / 3, 4), (math.pi, 3)])
def test_sector_examples(theta, j):
    assert geo.sector_of(theta) == j
    assert abs(geo.wrap_angle(theta - j * math.pi / 3)) <= math.pi / 6


@pytest.mark.parametrize("j", range(6))
def test_lines_belong_to_lower_sector(j):
    th = geo.line_angle(j)
    assert geo.sector_of(th) == j
    assert geo.sector_of(th + 1e-9) == (j + 1) % 6
    assert geo.sector_of(th - 1e-9) == j


def test_sector_tiling():
    rng = np.random.default_rng(7)
    for th in rng.uniform(-math.pi, math.pi, 10_000):
        hits = [j for j in range(6) if abs(geo.wrap_angle(th - j * math.pi / 3)) < math.pi / 6]
        assert hits == [geo.sector_of(th)]


@pytest.mark.parametrize("j,order", [
    (0, (2, 3, 1)), (1, (3, 2, 1)), (2, (3, 1, 2)),
    (3, (1, 3, 2)), (4, (1, 2, 3)), (5, (2, 1, 3)),
])
def test_particle_order_table(j, order):
    assert geo.particle_order(j) == order


@settings(max_examples=200, deadline=None)
@given(coord, coord, coord)
def test_round_trip(x1, x2, x3):
    cfg = geo.ParticleConfig(x1, x2, x3)
    jc = geo.to_jacobi(cfg)
    assume(math.hypot(jc.eta, jc.xi) > 1e-6)
    p = geo.to_hyperspherical(jc)
    back = geo.from_hyperspherical(p, jc.r)
    scale = max(abs(jc.eta), abs(jc.xi))
    assert abs(back.eta - jc.eta) <= 1e-14 * scale * 4
    assert abs(back.xi - jc.xi) <= 1e-14 * scale * 4
    assert -math.pi < p.theta <= math.pi


@settings(max_examples=200, deadline=None)
@given(coord, coord, coord)
def test_permutation_consistency(x1, x2, x3):
    xs = np.array([x1, x2, x3])
    gaps = np.diff(np.sort(xs))
    assume(gaps.min() > 1e-6)
    p = geo.config_to_point(geo.ParticleConfig(x1, x2, x3))
    assert geo.particle_order(p.j) == tuple(int(i) + 1 for i in np.argsort(xs))


@pytest.mark.parametrize("cfg,allowed", [
    ((1.0, 1.0, 3.0), (-math.pi / 2, math.pi / 2)),
    ((1.0, 1.0, -3.0), (-math.pi / 2, math.pi / 2)),
    ((0.0, 2.0, 2.0), (math.pi / 6, -5 * math.pi / 6)),
    ((4.0, 2.0, 2.0), (math.pi / 6, -5 * math.pi / 6)),
    ((2.0, 0.0, 2.0), (-math.pi / 6, 5 * math.pi / 6)),
    ((2.0, 5.0, 2.0), (-math.pi / 6, 5 * math.pi / 6)),
])
def test_coalescence_lines(cfg, allowed):
    p = geo.config_to_point(geo.ParticleConfig(*cfg))
    assert min(abs(geo.wrap_angle(p.theta - a)) for a in allowed) < 1e-12
    assert any(abs(geo.wrap_angle(p.theta - geo.line_angle(j))) < 1e-12 for j in range(6))


def test_validation():
    with pytest.raises(DomainError):
        geo.ParticleConfig(math.nan, 0, 0)
    with pytest.raises(DomainError):
        geo.HyperPoint(-1.0, 0.0, 0)
    with pytest.raises(DomainError):
        geo.HyperPoint(1.0, 0.0, 2)
    with pytest.raises(DomainError):
        geo.HyperPoint(1.0, 0.0, 6)
    with pytest.raises(DomainError):
        geo.particle_order(7)


def test_wrap_angle_range():
    th = np.linspace(-10, 10, 1001)
    w = geo.wrap_angle(th)
    assert np.all(w > -math.pi) and np.all(w <= math.pi)
    assert np.allclose(np.exp(1j * w), np.exp(1j * th))
