"""Composite Gauss-Legendre panels and one-sided Richardson differentiation."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError


@lru_cache(maxsize=16)
def _legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(a: float, b: float, order: int = 16):
    """Gauss-Legendre nodes and weights on a single panel [a, b]."""
    x, w = _legendre(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def composite_rule(a: float, b: float, panel_width: float = 1.0, order: int = 16):
    """Nodes and weights of equal panels of at most ``panel_width`` covering [a, b]."""
    n = max(1, int(np.ceil((b - a) / panel_width - 1e-12)))
    edges = np.linspace(a, b, n + 1)
    x, w = _legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def one_sided_derivative(f, x0: float, h: float, *, conv_tol: float = 1e-3):
    """Backward-difference derivative of ``f`` at ``x0`` from the left.

    Uses steps h, h/2, h/4 and two Richardson levels, so the O(h) and O(h^2)
    error terms cancel.  Returns ``(estimate, error_estimate)``.
    """
    f0 = f(x0)
    d = [(f0 - f(x0 - hh)) / hh for hh in (h, h / 2, h / 4)]
    r1 = [2 * d[1] - d[0], 2 * d[2] - d[1]]
    r2 = (4 * r1[1] - r1[0]) / 3
    err = abs(r2 - r1[1])
    scale = max(abs(r2), abs(f0), 1e-300)
    if not np.isfinite(r2) or err > conv_tol * scale:
        raise ConvergenceError(
            f"Richardson extrapolation did not settle (estimate {r2!r}, spread {err:.3g})"
        )
    return r2, err
