"""Piecewise scattering eigenfunctions, plane waves and Wronskians.

All three eigenfunction families share one piecewise template.  With an
outer rate ``u`` and an interior rate ``w``::

    side="left":   x<a: e^{ux} + R_l e^{-ux}   a<x<b: A_l e^{wx} + B_l e^{-wx}   x>b: T e^{ux}
    side="right":  x<a: T e^{-ux}               a<x<b: A_r e^{wx} + B_r e^{-wx}   x>b: R_r e^{ux} + e^{-ux}

The plus family uses (u, w) = (ik, iQ) with the plus amplitudes, the minus
family (-ik, -iQ) with the starred amplitudes, and the tilde family
(-k_tilde, -Q_tilde) with the tilde amplitudes.  Points with x == a or
x == b are evaluated on the interior piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .coefficients import CoefficientSet, plus_amplitudes, star_amplitudes, tilde_amplitudes
from .core import EnergyPoint, PhysicalConfig, branch_sqrt, energy_point

SIDES = ("left", "right")
EIGEN_FAMILIES = ("plus", "minus", "tilde")


@dataclass(frozen=True)
class EigenfunctionId:
    family: str
    side: str
    ep: EnergyPoint

    def __post_init__(self):
        if self.family not in EIGEN_FAMILIES:
            raise ValueError(f"family must be one of {EIGEN_FAMILIES}, got {self.family!r}")
        if self.side not in SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples on a 1D grid plus the quadrature rule that produced them.

    ``weights`` (when present) integrate over ``grid``: sum(weights * f) is the
    integral of f over ``window``.
    """

    axis: str
    grid: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None = None
    window: tuple[float, float] | None = None
    rule: str = "samples"

    def __post_init__(self):
        if self.axis not in ("position", "momentum", "energy", "wavenumber"):
            raise ValueError(f"unknown axis {self.axis!r}")
        if len(self.grid) != len(self.values) or len(self.grid) < 2:
            raise ValueError("grid and values must have equal length >= 2")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")

    def inner(self, other: "SampledFunction") -> complex:
        """(self, other) = integral of conj(self) * other with this rule's weights."""
        if self.weights is None:
            raise ValueError("inner product needs quadrature weights")
        return complex(np.sum(self.weights * np.conj(self.values) * other.values))

    def norm(self) -> float:
        return math.sqrt(max(self.inner(self).real, 0.0))


def _family_coefficients(cfg: PhysicalConfig, family: str, k, q) -> CoefficientSet:
    if family == "plus":
        return plus_amplitudes(cfg, k, q)
    if family == "minus":
        return star_amplitudes(cfg, k, q)
    return tilde_amplitudes(cfg, k, q)


def _rates(family: str, cs: CoefficientSet):
    if family == "plus":
        return 1j * cs.k, 1j * cs.q
    if family == "minus":
        return -1j * cs.k, -1j * cs.q
    return -cs.k, -cs.q


def prefactor(cfg: PhysicalConfig, k):
    """(m / 2 pi k hbar^2)^{1/2} on the package branch."""
    return branch_sqrt(cfg.m / (2 * np.pi * np.asarray(k, dtype=complex) * cfg.hbar**2))


def pieces(cfg: PhysicalConfig, family: str, side: str, cs: CoefficientSet, x, deriv: int = 0):
    """Unnormalised piecewise value (deriv=0) or x-derivative (deriv=1).

    ``x`` and the coefficient arrays broadcast against each other, so a
    column of wavenumbers against a row of positions yields a matrix.
    """
    x = np.asarray(x, dtype=float)
    u, w = _rates(family, cs)
    with np.errstate(over="ignore", invalid="ignore"):
        return _select(cfg, side, cs, x, u, w, deriv)


def _select(cfg, side, cs, x, u, w, deriv):
    eu, emu = np.exp(u * x), np.exp(-u * x)
    ew, emw = np.exp(w * x), np.exp(-w * x)
    if side == "left":
        outer_l = (eu, cs.r_l * emu)
        mid = (cs.a_l * ew, cs.b_l * emw)
        outer_r = (cs.t * eu, 0.0)
    else:
        outer_l = (0.0, cs.t * emu)
        mid = (cs.a_r * ew, cs.b_r * emw)
        outer_r = (cs.r_r * eu, emu)
    if deriv == 0:
        left, middle, right = (sum(p) for p in (outer_l, mid, outer_r))
    elif deriv == 1:
        left = u * outer_l[0] - u * outer_l[1]
        middle = w * mid[0] - w * mid[1]
        right = u * outer_r[0] - u * outer_r[1]
    else:
        raise ValueError("only deriv 0 and 1 are available in closed form")
    if np.any(cs.degenerate):
        middle = np.where(cs.degenerate, _linear_interior(cfg, side, cs, x, u, deriv), middle)
    return np.where(x < cfg.a, left, np.where(x > cfg.b, right, middle))


def _linear_interior(cfg, side, cs, x, u, deriv):
    """At E = V0 the interior solution is linear: continue value and slope from x = a."""
    lo, hi = (1.0, cs.r_l) if side == "left" else (0.0, cs.t)
    ea, ema = np.exp(u * cfg.a), np.exp(-u * cfg.a)
    slope = u * (lo * ea - hi * ema)
    return lo * ea + hi * ema + slope * (x - cfg.a) if deriv == 0 else slope + 0 * x


def _wavenumbers(family: str, ep: EnergyPoint):
    if family == "tilde":
        return ep.k_tilde, ep.q_tilde
    return ep.k, ep.q


def chi(cfg: PhysicalConfig, id: EigenfunctionId, x, deriv: int = 0):
    """Normalised eigenfunction value (or first derivative) at x."""
    k, q = _wavenumbers(id.family, id.ep)
    cs = _family_coefficients(cfg, id.family, k, q)
    val = prefactor(cfg, cs.k) * pieces(cfg, id.family, id.side, cs, x, deriv)
    return complex(val) if np.ndim(val) == 0 else val


def chi_prime(cfg: PhysicalConfig, id: EigenfunctionId, x):
    return chi(cfg, id, x, deriv=1)


def chi_tilde(cfg: PhysicalConfig, side: str, ep: EnergyPoint, x, deriv: int = 0):
    return chi(cfg, EigenfunctionId("tilde", side, ep), x, deriv)


def k_normalized_chi(cfg: PhysicalConfig, id: EigenfunctionId, x, deriv: int = 0):
    """<x|k+->_{l,r} = sqrt(hbar^2 k / m) chi(x; E)."""
    k, _ = _wavenumbers(id.family, id.ep)
    return branch_sqrt(cfg.hbar**2 * k / cfg.m) * chi(cfg, id, x, deriv)


def plane_wave(cfg: PhysicalConfig, x, p):
    """<x|p> = (2 pi hbar)^{-1/2} e^{ipx/hbar}."""
    val = np.exp(1j * np.asarray(p) * np.asarray(x) / cfg.hbar) / np.sqrt(2 * np.pi * cfg.hbar)
    return complex(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class Eigenfunction:
    """Callable view of one eigenfunction, exposing its analytic derivative."""

    cfg: PhysicalConfig
    id: EigenfunctionId
    _cs: CoefficientSet = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k, q = _wavenumbers(self.id.family, self.id.ep)
        object.__setattr__(self, "_cs", _family_coefficients(self.cfg, self.id.family, k, q))

    @property
    def coefficients(self) -> CoefficientSet:
        return self._cs

    def __call__(self, x):
        return prefactor(self.cfg, self._cs.k) * pieces(self.cfg, self.id.family, self.id.side, self._cs, x)

    def derivative(self, x):
        return prefactor(self.cfg, self._cs.k) * pieces(self.cfg, self.id.family, self.id.side, self._cs, x, 1)


def eigenfunction(cfg: PhysicalConfig, family: str, side: str, e=None, *, ep: EnergyPoint | None = None) -> Eigenfunction:
    """Build an :class:`Eigenfunction` from an energy or a prepared EnergyPoint."""
    if ep is None:
        ep = energy_point(cfg, e)
    return Eigenfunction(cfg, EigenfunctionId(family, side, ep))


def wronskian(f: Callable, g: Callable, x, fprime: Callable | None = None,
              gprime: Callable | None = None, h: float = 1e-5) -> Any:
    """W(f, g)(x) = f g' - f' g.

    Derivatives come from ``fprime``/``gprime``, else from a ``derivative``
    attribute on the callables, else from a fourth-order central difference.
    """
    def deriv(fun, given):
        if given is not None:
            return given
        if hasattr(fun, "derivative"):
            return fun.derivative
        return lambda y: (8 * (fun(y + h) - fun(y - h)) - (fun(y + 2 * h) - fun(y - 2 * h))) / (12 * h)

    df, dg = deriv(f, fprime), deriv(g, gprime)
    return f(x) * dg(x) - df(x) * g(x)

