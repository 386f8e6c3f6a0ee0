"""Quadrature rules shared by the transforms, norms and resolvent checks."""

from __future__ import annotations

import math
import warnings
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad_vec

from .errors import QuadratureFailure


@lru_cache(maxsize=32)
def _legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def panel_edges(lo: float, hi: float, breakpoints=(), panel: float = 0.25) -> np.ndarray:
    """Panel boundaries covering [lo, hi], never straddling a breakpoint."""
    if not hi > lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    cuts = sorted({lo, hi, *[p for p in breakpoints if lo < p < hi]})
    edges = [lo]
    for left, right in zip(cuts[:-1], cuts[1:]):
        n = max(1, math.ceil((right - left) / panel))
        edges.extend(np.linspace(left, right, n + 1)[1:])
    return np.asarray(edges)


def gauss_legendre(lo: float, hi: float, breakpoints=(), panel: float = 0.25, order: int = 20):
    """Composite Gauss-Legendre nodes and weights on [lo, hi]."""
    edges = panel_edges(lo, hi, breakpoints, panel)
    t, w = _legendre(order)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    return (mid + half * t).ravel(), (half * w).ravel()


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for ``n`` (odd) equally spaced nodes."""
    if n < 3 or n % 2 == 0:
        raise ValueError("composite Simpson needs an odd number of nodes >= 3")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * h / 3.0


def cumulative_gauss_legendre(f, lo: float, upper: np.ndarray, breakpoints=(), panel: float = 0.25,
                              order: int = 20) -> np.ndarray:
    """integral_lo^y f for every y in ``upper`` (f vectorised, smooth between breakpoints)."""
    upper = np.asarray(upper, dtype=float)
    hi = float(np.max(upper))
    if hi <= lo:
        return np.zeros(upper.shape, dtype=complex)
    edges = panel_edges(lo, hi, breakpoints, panel)
    t, w = _legendre(order)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    full = np.sum(half * w * f(mid + half * t), axis=1)
    running = np.concatenate([[0.0], np.cumsum(full)])

    idx = np.clip(np.searchsorted(edges, upper, side="right") - 1, 0, len(edges) - 2)
    start = edges[idx]
    hp = 0.5 * (upper - start)[:, None]
    partial = np.sum(hp * w * f(start[:, None] + hp * (1 + t)), axis=1)
    out = running[idx] + partial
    return np.where(upper <= lo, 0.0, out)


def adaptive(f, lo: float, hi: float, points=(), abs_tol: float = 1e-9, rel_tol: float = 1e-8,
             limit: int = 2000):
    """Adaptive Gauss-Kronrod integral of a (possibly vector, complex) f on [lo, hi].

    Raises QuadratureFailure when the integrator reports non-convergence.
    """
    pts = [p for p in points if lo < p < hi]
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, err, info = quad_vec(f, lo, hi, epsabs=abs_tol, epsrel=rel_tol, points=pts or None,
                                      limit=limit, full_output=True)
        except IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from exc
    if not info.success:
        raise QuadratureFailure(f"adaptive quadrature did not converge (estimated error {err:.3g})")
    return val
