"""Physical configuration, the square-root branch and energy/wavenumber maps.

Every wavenumber in the package goes through :func:`branch_sqrt`, whose
argument convention is arg(z) in (-pi, pi] mapped to arg(w) in (-pi/2, pi/2].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PhysicalConfig:
    """Rectangular barrier of height ``v0`` on ``[a, b]``.

    ``v0 == 0`` is accepted as the free-particle limit.
    """

    v0: float = 10.0
    a: float = 0.0
    b: float = 1.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"barrier edges must satisfy b > a, got a={self.a}, b={self.b}")
        if self.v0 < 0:
            raise ValueError(f"v0 must be non-negative (wells are not supported), got {self.v0}")
        if self.m <= 0 or self.hbar <= 0:
            raise ValueError("m and hbar must be positive")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def scale(self) -> float:
        """2m/hbar^2, the factor turning energies into squared wavenumbers."""
        return 2.0 * self.m / self.hbar**2

    def energy(self, k):
        """E = hbar^2 k^2 / 2m (vectorised)."""
        return k * k / self.scale

    def potential(self, x):
        """V(x); the closed interval [a, b] counts as inside the barrier."""
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.a) & (x <= self.b), self.v0, 0.0)


def branch_sqrt(z):
    """Square root with arg(z) in (-pi, pi] and result arg in (-pi/2, pi/2].

    Built from the polar form so that the negative real axis (including a
    signed ``-0.0`` imaginary part) always maps onto the positive imaginary
    axis. Accepts scalars or numpy arrays.
    """
    if np.ndim(z):
        z = np.asarray(z, dtype=complex)
        # angle() returns -pi for (-x, -0.0); the branch wants +pi there
        arg = np.where((z.imag == 0) & (z.real < 0), np.pi, np.angle(z))
        return np.sqrt(np.abs(z)) * np.exp(0.5j * arg)
    z = complex(z)
    if z.imag == 0 and z.real < 0:
        arg = math.pi
    else:
        arg = math.atan2(z.imag, z.real)
    return math.sqrt(abs(z)) * cmath.exp(0.5j * arg)


@dataclass(frozen=True)
class EnergyPoint:
    """An energy with its derived wavenumbers.

    k, q are the propagating wavenumbers outside/inside the barrier and
    k_tilde, q_tilde the decaying ones used for Re(e) < 0.
    """

    e: complex
    k: complex
    q: complex
    k_tilde: complex
    q_tilde: complex


def energy_point(cfg: PhysicalConfig, e) -> EnergyPoint:
    e = complex(e)
    if not (math.isfinite(e.real) and math.isfinite(e.imag)):
        raise ValueError(f"energy must be finite, got {e}")
    s = cfg.scale
    return EnergyPoint(
        e=e,
        k=branch_sqrt(s * e),
        q=branch_sqrt(s * (e - cfg.v0)),
        k_tilde=branch_sqrt(-s * e),
        q_tilde=branch_sqrt(-s * (e - cfg.v0)),
    )


def wavenumber_point(cfg: PhysicalConfig, k) -> EnergyPoint:
    """EnergyPoint parameterised directly by k, which may lie on any sheet.

    Unlike :func:`energy_point`, ``k`` is kept as given (e.g. k < 0 or Im k < 0)
    so that formulas written in the wavenumber can be continued through the
    whole k-plane. The tilde wavenumbers follow k_tilde = -i k.
    """
    k = complex(k)
    q = branch_sqrt(k * k - cfg.scale * cfg.v0)
    return EnergyPoint(e=k * k / cfg.scale, k=k, q=q, k_tilde=-1j * k, q_tilde=-1j * q)


def physical_wavenumber(cfg: PhysicalConfig, e) -> complex:
    """The root of k^2 = 2mE/hbar^2 with Im k >= 0 (decaying outgoing waves)."""
    return 1j * branch_sqrt(-cfg.scale * complex(e))
