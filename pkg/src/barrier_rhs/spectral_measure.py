"""Theta matrices of the resolvent and the spectral measures they generate.

With the initial basis (chi+_r, chi+_l) the resolvent kernel reads
sum_ij theta_ij(E) chi_i(x) chi_j(x') off the diagonal x = x', and the
matrix measure follows from the jump of theta across the real axis,

    rho_ij(E1, E2) = 1/(2 pi i) int_{E1}^{E2} [theta_ij(E - i eps) - theta_ij(E + i eps)] dE,   eps -> 0+.

The final basis uses (chi-_r, chi-_l) instead and must give the same measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import plus_amplitudes, star_amplitudes, tilde_amplitudes
from .core import PhysicalConfig, branch_sqrt
from .errors import ExtrapolationUnstable, OnCut

BASES = ("initial", "final")
EPSILONS = (1e-3, 1e-4, 1e-5)
NODES_PER_UNIT = 64
_TWO_PI_OVER_I = 2 * np.pi / 1j


@dataclass(frozen=True)
class ThetaMatrix:
    entries: np.ndarray
    quadrant: str
    basis: str


@dataclass(frozen=True)
class SpectralMeasureInterval:
    e1: float
    e2: float
    rho: np.ndarray
    basis: str = "initial"
    nodes: int = 0
    extrapolation_change: float = 0.0
    imag_residual: float = 0.0


def _quadrant(e):
    e = np.asarray(e, dtype=complex)
    out = np.where(e.real < 0, "left_half", np.where(e.imag > 0, "first", np.where(e.imag < 0, "fourth", "cut")))
    return out


def _theta_entries(cfg: PhysicalConfig, e, basis: str) -> np.ndarray:
    """theta(E) for an array of energies; shape e.shape + (2, 2)."""
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}")
    e = np.atleast_1d(np.asarray(e, dtype=complex))
    quad = _quadrant(e)
    if np.any(quad == "cut"):
        raise OnCut("theta is only defined off the spectrum [0, inf)")
    s = cfg.scale
    out = np.zeros(e.shape + (2, 2), dtype=complex)

    left = quad == "left_half"
    if np.any(left):
        el = e[left]
        td = tilde_amplitudes(cfg, branch_sqrt(-s * el), branch_sqrt(-s * (el - cfg.v0)))
        out[left, 1, 0] = -2 * np.pi / td.t

    k = branch_sqrt(s * e)
    q = branch_sqrt(s * (e - cfg.v0))
    upper = quad == "first"
    if np.any(upper):
        st = star_amplitudes(cfg, k[upper], q[upper])
        if basis == "initial":
            out[upper, 0, 0] = _TWO_PI_OVER_I
            out[upper, 0, 1] = -_TWO_PI_OVER_I * st.r_l / st.t
        else:
            out[upper, 0, 1] = -_TWO_PI_OVER_I * st.r_r / st.t
            out[upper, 1, 1] = _TWO_PI_OVER_I
    lower = quad == "fourth"
    if np.any(lower):
        pl = plus_amplitudes(cfg, k[lower], q[lower])
        if basis == "initial":
            out[lower, 0, 1] = _TWO_PI_OVER_I * pl.r_r / pl.t
            out[lower, 1, 1] = -_TWO_PI_OVER_I
        else:
            out[lower, 0, 0] = -_TWO_PI_OVER_I
            out[lower, 0, 1] = _TWO_PI_OVER_I * pl.r_l / pl.t
    return out


def theta_matrix(cfg: PhysicalConfig, e: complex, basis: str = "initial") -> ThetaMatrix:
    """theta(E) for E off [0, inf)."""
    e = complex(e)
    entries = _theta_entries(cfg, e, basis)[0]
    return ThetaMatrix(entries, str(_quadrant(e)), basis)


def jump_density(cfg: PhysicalConfig, e, eps: float, basis: str = "initial") -> np.ndarray:
    """[theta(E - i eps) - theta(E + i eps)] / (2 pi i) for real E (array)."""
    e = np.asarray(e, dtype=float)
    below = _theta_entries(cfg, e - 1j * eps, basis)
    above = _theta_entries(cfg, e + 1j * eps, basis)
    return (below - above) / (2j * np.pi)


def boundary_density(cfg: PhysicalConfig, e, basis: str = "initial", epsilons=EPSILONS) -> np.ndarray:
    """eps -> 0+ limit of :func:`jump_density`, extrapolated pointwise."""
    return richardson_odd([jump_density(cfg, e, eps, basis) for eps in epsilons], epsilons)


def _gl_integral(cfg, e1, e2, eps, basis, n):
    t, w = np.polynomial.legendre.leggauss(n)
    half, mid = 0.5 * (e2 - e1), 0.5 * (e2 + e1)
    dens = jump_density(cfg, mid + half * t, eps, basis)
    return half * np.tensordot(w, dens, axes=(0, 0))


def _integrate(cfg, e1, e2, eps, basis, tol=1e-8, max_nodes=8192):
    n = max(16, math.ceil(NODES_PER_UNIT * (e2 - e1)))
    prev = _gl_integral(cfg, e1, e2, eps, basis, n)
    while n < max_nodes:
        n *= 2
        cur = _gl_integral(cfg, e1, e2, eps, basis, n)
        if np.max(np.abs(cur - prev)) < tol:
            return cur, n
        prev = cur
    return prev, n


def richardson_odd(values, eps) -> np.ndarray:
    """Limit at eps = 0 of values fitted by v0 + c1 eps + c3 eps^3."""
    eps = np.asarray(eps, dtype=float)
    design = np.stack([np.ones_like(eps), eps, eps**3], axis=1)
    flat = np.stack([np.asarray(v).ravel() for v in values])
    coef = np.linalg.solve(design, flat)
    return coef[0].reshape(np.shape(values[0]))


def rho_interval(cfg: PhysicalConfig, e1: float, e2: float, basis: str = "initial",
                 epsilons=EPSILONS, atol: float = 1e-12) -> SpectralMeasureInterval:
    """Matrix measure of (e1, e2) from extrapolated boundary values of theta.

    The jump is an odd function of eps (theta is analytic across the real
    axis once the two sides are continued), so the limit is taken by fitting
    eps and eps^3 terms.  Intervals below zero are accepted and should give
    a vanishing measure.
    """
    if not e2 > e1:
        raise ValueError("rho_interval needs e1 < e2")
    if e1 < 0 < e2:
        raise ValueError("split intervals at E = 0")
    vals, nodes = [], 0
    for eps in epsilons:
        v, n = _integrate(cfg, e1, e2, eps, basis)
        vals.append(v)
        nodes = max(nodes, n)
    d1 = np.max(np.abs(vals[0] - vals[1]))
    d2 = np.max(np.abs(vals[1] - vals[2]))
    if d2 > d1 + atol:
        raise ExtrapolationUnstable(f"boundary values do not settle: |d1| = {d1:.3g}, |d2| = {d2:.3g}")
    rho = richardson_odd(vals, epsilons)
    return SpectralMeasureInterval(e1, e2, rho.real, basis, nodes, float(d2), float(np.max(np.abs(rho.imag))))


@dataclass(frozen=True)
class SpectrumPoint:
    e: float
    verdict: str
    jump: float


def spectrum_verdict(cfg: PhysicalConfig, e_grid, eps: float = 1e-8) -> list[SpectrumPoint]:
    """Label each real E as "resolvent" (E < 0) or "spectrum" (E >= 0).

    ``jump`` is max |theta(E - i eps) - theta(E + i eps)| / 2 pi, which is
    ~0 in the resolvent set and ~1 on the spectrum.  At E = 0 the amplitudes
    are undefined and the point is classed as spectrum by closedness.
    """
    out = []
    for e in np.asarray(e_grid, dtype=float):
        if e == 0:
            out.append(SpectrumPoint(0.0, "spectrum", float("nan")))
            continue
        jump = float(np.max(np.abs(jump_density(cfg, np.array([e]), eps))))
        out.append(SpectrumPoint(float(e), "resolvent" if e < 0 else "spectrum", jump))
    return out
