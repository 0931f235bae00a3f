import math

import numpy as np
import pytest

from hyperdelta.errors import ConvergenceError
from hyperdelta.quadrature import composite_rule, one_sided_derivative, panel_rule


def test_panel_rule_exact_for_polynomials():
    t, w = panel_rule(-1.0, 3.0, 8)
    for deg in range(16):
        exact = (3.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
        assert np.dot(w, t**deg) == pytest.approx(exact, rel=1e-13)


def test_composite_rule_covers_interval():
    t, w = composite_rule(0.0, 7.5, 1.0, 12)
    assert t.size == 8 * 12
    assert w.sum() == pytest.approx(7.5, rel=1e-14)
    assert np.dot(w, np.exp(-t)) == pytest.approx(1 - math.exp(-7.5), rel=1e-14)


def test_one_sided_derivative_uses_left_branch():
    # |x| has slope -1 from the left of 0
    d, err = one_sided_derivative(lambda x: abs(x) + x**3, 0.0, 1e-3)
    assert d == pytest.approx(-1.0, abs=1e-12)
    assert err < 1e-6


def test_one_sided_derivative_smooth():
    d, _ = one_sided_derivative(np.sin, 0.7, 1e-3)
    assert d == pytest.approx(math.cos(0.7), abs=1e-10)


def test_one_sided_derivative_reports_failure():
    with pytest.raises(ConvergenceError):
        one_sided_derivative(lambda x: math.sin(1e6 * x), 0.3, 1e-3)
