"""Resolvent kernels of H, P and Q, and a quadrature check of (E - H)^{-1}.

The kernel of (E - H)^{-1} is separable,

    G(x, x'; E) = c(E) * u(x_<) * v(x_>),

with (u, v, c) depending on where E sits:

    Re E < 0            (chi~_r, chi~_l, -2 pi / T~)
    Im E > 0            (chi+_r, chi+_l, (2 pi / i) / T)
    Im E < 0            (chi-_r, chi-_l, -(2 pi / i) / T*)
    wave number k       (chi+_r, chi+_l, (2 pi / i) / T) continued to every k
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import PhysicalConfig, energy_point, wavenumber_point
from .eigenfunctions import Eigenfunction, EigenfunctionId
from .errors import OnCut, TransmissionZero
from .quadrature import adaptive, cumulative_gauss_legendre
from .testspace import apply_operator

REGIONS = ("left_half", "first_quadrant", "fourth_quadrant", "unified_k")
T_FLOOR = 1e-14


@dataclass(frozen=True)
class GreenEvaluation:
    x: Any
    x_prime: Any
    e: complex
    value: Any
    region: str
    k: complex | None = None


@dataclass(frozen=True)
class SeparableKernel:
    """c * u(min(x, x')) * v(max(x, x')), evaluable on broadcast arrays."""

    region: str
    e: complex
    k: complex
    u: Eigenfunction
    v: Eigenfunction
    const: complex

    def __call__(self, x, x_prime):
        x, xp = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(x_prime, dtype=float))
        val = self.const * self.u(np.minimum(x, xp)) * self.v(np.maximum(x, xp))
        return complex(val) if np.ndim(val) == 0 else val


def region_of(e: complex) -> str:
    e = complex(e)
    if e.real < 0:
        return "left_half"
    if e.imag > 0:
        return "first_quadrant"
    if e.imag < 0:
        return "fourth_quadrant"
    raise OnCut(f"E = {e} lies on the spectrum [0, inf); use green_k or a boundary value E +- i eps")


def _pair(cfg, family, ep):
    return (Eigenfunction(cfg, EigenfunctionId(family, "right", ep)),
            Eigenfunction(cfg, EigenfunctionId(family, "left", ep)))


def resolvent_kernel(cfg: PhysicalConfig, e: complex, region: str | None = None) -> SeparableKernel:
    """Separable kernel of (E - H)^{-1}; ``region`` overrides the automatic choice.

    Overriding is only meaningful where the requested formula is defined, e.g.
    the quadrant formulas also hold for Re E < 0.
    """
    e = complex(e)
    region = region or region_of(e)
    ep = energy_point(cfg, e)
    if region == "left_half":
        u, v = _pair(cfg, "tilde", ep)
        const = -2 * np.pi / u.coefficients.t
    elif region == "first_quadrant":
        u, v = _pair(cfg, "plus", ep)
        const = (2 * np.pi / 1j) / u.coefficients.t
    elif region == "fourth_quadrant":
        u, v = _pair(cfg, "minus", ep)
        const = -(2 * np.pi / 1j) / u.coefficients.t
    else:
        raise ValueError(f"unknown region {region!r}")
    return SeparableKernel(region, e, ep.k, u, v, complex(const))


def unified_kernel(cfg: PhysicalConfig, k: complex) -> SeparableKernel:
    """(2 pi / i) chi+_r(x_<; k) chi+_l(x_>; k) / T(k) for any complex k."""
    ep = wavenumber_point(cfg, k)
    u, v = _pair(cfg, "plus", ep)
    t = u.coefficients.t
    if abs(t) < T_FLOOR:
        raise TransmissionZero(f"|T(k)| = {abs(t):.3g} at k = {k}")
    return SeparableKernel("unified_k", ep.e, ep.k, u, v, complex((2 * np.pi / 1j) / t))


def green(cfg: PhysicalConfig, x, x_prime, e: complex) -> GreenEvaluation:
    """G(x, x'; E) using the formula of E's region of the complex plane."""
    ker = resolvent_kernel(cfg, e)
    return GreenEvaluation(x, x_prime, ker.e, ker(x, x_prime), ker.region, ker.k)


def green_k(cfg: PhysicalConfig, x, x_prime, k: complex) -> GreenEvaluation:
    """G as a single function of the wave number; E = hbar^2 k^2 / 2m."""
    ker = unified_kernel(cfg, k)
    return GreenEvaluation(x, x_prime, ker.e, ker(x, x_prime), "unified_k", ker.k)


def free_green(cfg: PhysicalConfig, x, x_prime, e: complex):
    """Free-particle kernel (m / i hbar^2 k) e^{ik|x-x'|} with Im k > 0."""
    k = 1j * np.sqrt(-cfg.scale * complex(e) + 0j)
    if k.imag < 0:
        k = -k
    return cfg.m / (1j * cfg.hbar**2 * k) * np.exp(1j * k * np.abs(np.asarray(x) - np.asarray(x_prime)))


# ---------------------------------------------------------------------------
# position and momentum resolvents


@dataclass(frozen=True)
class QResolventKernel:
    """(z - x)^{-1} delta(x - x'): a multiplier plus a delta marker."""

    x: float
    z: complex
    factor: complex
    delta: bool = True

    def apply(self, phi) -> complex:
        return self.factor * complex(phi(self.x))


def resolvent_q_kernel(x: float, x_prime: float, z: complex) -> QResolventKernel:
    """Kernel of (z - Q)^{-1}; ``x_prime`` only fixes where the delta sits."""
    z = complex(z)
    if z.imag == 0:
        raise OnCut(f"z = {z} lies on the spectrum of Q")
    return QResolventKernel(float(x), z, 1.0 / (z - x))


def resolvent_p_kernel(cfg: PhysicalConfig, x, x_prime, p: complex):
    """Kernel of (p - P)^{-1}, with P = -i hbar d/dx."""
    p = complex(p)
    if p.imag == 0:
        raise OnCut(f"p = {p} lies on the spectrum of P")
    d = np.asarray(x, dtype=float) - np.asarray(x_prime, dtype=float)
    wave = np.exp(1j * p * d / cfg.hbar) / (1j * cfg.hbar)
    if p.imag > 0:
        val = np.where(d > 0, wave, 0.0)
    else:
        val = np.where(d < 0, -wave, 0.0)
    return complex(val) if np.ndim(val) == 0 else val


# ---------------------------------------------------------------------------
# acting with the resolvent


def apply_resolvent(kernel: SeparableKernel, f, x, window, breakpoints=(), panel: float = 0.05):
    """(G f)(x) = c [ v(x) int_lo^x u f + u(x) int_x^hi v f ] on ``window``.

    The two partial integrals are accumulated from their own ends so neither
    is obtained by subtracting nearly equal numbers.
    """
    lo, hi = window
    shape = np.shape(x)
    x = np.asarray(x, dtype=float).ravel()
    xc = np.clip(x, lo, hi)
    inner = cumulative_gauss_legendre(lambda y: kernel.u(y) * f(y), lo, xc, breakpoints, panel)
    mirrored = [-p for p in breakpoints]
    outer = cumulative_gauss_legendre(lambda y: kernel.v(-y) * f(-y), -hi, -xc, mirrored, panel)
    return (kernel.const * (kernel.v(x) * inner + kernel.u(x) * outer)).reshape(shape)


def probe_points(cfg: PhysicalConfig) -> np.ndarray:
    """Seven probes covering all three regions, two within 0.1 of an edge."""
    a, b, L = cfg.a, cfg.b, cfg.width
    return np.array([a - 2 * L, a - 0.5 * L, a + 0.05 * L, 0.5 * (a + b), b - 0.05 * L, b + 0.5 * L, b + 2 * L])


def verify_resolvent(cfg: PhysicalConfig, phi, e: complex, probes=None, abs_tol: float = 1e-9,
                     rel_tol: float = 1e-8) -> float:
    """max over probes of | int G(x, x'; E) [(E - H) phi](x') dx' - phi(x) |.

    ``phi`` is a :class:`~barrier_rhs.testspace.TestFunction` so that H phi is exact.
    Raises QuadratureFailure if the adaptive rule does not converge.
    """
    probes = probe_points(cfg) if probes is None else np.asarray(probes, dtype=float)
    if not phi.terms:
        return 0.0
    ker = resolvent_kernel(cfg, e)
    h_phi = apply_operator(cfg, phi, "H")
    e = complex(e)

    def integrand(xp):
        src = e * phi(xp) - h_phi(xp)
        return ker(probes, xp) * src

    lo, hi = phi.support
    lo, hi = min(lo, probes.min()), max(hi, probes.max())
    val = adaptive(integrand, lo, hi, points=(cfg.a, cfg.b, *probes), abs_tol=abs_tol, rel_tol=rel_tol)
    return float(np.max(np.abs(val - phi(probes))))
