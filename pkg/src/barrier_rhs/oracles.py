"""Independent reference computations used to cross-check the closed forms.

Nothing here imports the coefficient formulas: the transfer-matrix solver
matches plane waves at the two interfaces numerically, and the transmission
probability uses the textbook sinh/sin expression.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from .core import PhysicalConfig


def _interface(kappa, x0):
    """Columns: (value, derivative) of e^{i kappa x} and e^{-i kappa x} at x0."""
    ep, em = np.exp(1j * kappa * x0), np.exp(-1j * kappa * x0)
    return np.array([[ep, em], [1j * kappa * ep, -1j * kappa * em]])


def transfer_matrix_amplitudes(cfg: PhysicalConfig, k: complex, q: complex) -> dict:
    """Plus-family amplitudes obtained from 2x2 interface matching.

    Regions carry ``A e^{i kappa x} + B e^{-i kappa x}`` with kappa = k, q, k.
    """
    m_a = np.linalg.solve(_interface(q, cfg.a), _interface(k, cfg.a))
    m_b = np.linalg.solve(_interface(k, cfg.b), _interface(q, cfg.b))
    total = m_b @ m_a

    # left incidence: left (1, R_l) -> right (T, 0)
    r_l = -total[1, 0] / total[1, 1]
    t_left = total[0, 0] + total[0, 1] * r_l
    a_l, b_l = m_a @ np.array([1.0, r_l])

    # right incidence: left (0, T) -> right (R_r, 1)
    t_right = 1.0 / total[1, 1]
    r_r = total[0, 1] * t_right
    a_r, b_r = m_a @ np.array([0.0, t_right])

    return {
        "t": t_left,
        "t_right": t_right,
        "r_l": r_l,
        "r_r": r_r,
        "a_l": a_l,
        "b_l": b_l,
        "a_r": a_r,
        "b_r": b_r,
    }


def barrier_transmission(cfg: PhysicalConfig, e: float) -> float:
    """|T|^2 for real E > 0 from the standard sinh / sin expression."""
    v0, L = cfg.v0, cfg.width
    if v0 == 0:
        return 1.0
    if e < v0:
        kappa = math.sqrt(cfg.scale * (v0 - e))
        return 1.0 / (1.0 + v0**2 * math.sinh(kappa * L) ** 2 / (4 * e * (v0 - e)))
    if e > v0:
        q = math.sqrt(cfg.scale * (e - v0))
        return 1.0 / (1.0 + v0**2 * math.sin(q * L) ** 2 / (4 * e * (e - v0)))
    k = math.sqrt(cfg.scale * e)
    return 1.0 / (1.0 + (k * L) ** 2 / 4)


def integrate_schrodinger(cfg: PhysicalConfig, e: float, x_start: float, psi0: complex,
                          dpsi0: complex, x_end: float, rtol: float = 1e-12, atol: float = 1e-14):
    """Runge-Kutta solution of -hbar^2/2m psi'' + V psi = E psi; returns (psi, psi') at x_end.

    Integration is split at the barrier edges so the step control never has
    to straddle the potential jump.
    """
    edges = sorted({x_start, x_end, *[p for p in (cfg.a, cfg.b) if min(x_start, x_end) < p < max(x_start, x_end)]},
                   reverse=x_end < x_start)
    y = np.array([psi0, dpsi0], dtype=complex)
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        v = cfg.v0 if cfg.a <= mid <= cfg.b else 0.0

        def piece(x, yy, v=v):
            return [yy[1], cfg.scale * (v - e) * yy[0]]

        sol = solve_ivp(piece, (lo, hi), y, method="DOP853", rtol=rtol, atol=atol)
        y = sol.y[:, -1]
    return y[0], y[1]
