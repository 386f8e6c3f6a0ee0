"""Closed-form scattering amplitudes of the rectangular barrier.

Three families are provided:

* ``plus``  -- T, A_r, B_r, R_r, R_l, A_l, B_l at wavenumber k,
* ``star``  -- the starred amplitudes T*, A*_r, ... written as their own
  analytic formulas (they coincide with complex conjugation only for real k),
* ``tilde`` -- the decaying-wave amplitudes at k_tilde, used for Re(E) < 0.

All evaluators are vectorised: ``k`` and ``q`` may be numpy arrays of any
broadcastable shape, in which case every field of the returned
:class:`CoefficientSet` is an array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import EnergyPoint, PhysicalConfig
from .errors import ZeroWavenumber

FAMILIES = ("plus", "star", "tilde")

# |q| (b - a) below this is treated as the E = V0 threshold
DEGENERATE_QL = 1e-8
# interior wavenumber (times b - a) substituted for A, B at the threshold
REGULARISED_QL = 1e-5
K_GUARD = 1e-12


@dataclass(frozen=True)
class CoefficientSet:
    """Amplitudes of one family; ``k`` and ``q`` are the wavenumbers they belong to.

    For the tilde family ``k`` and ``q`` hold k_tilde and q_tilde. ``q`` may
    differ from the EnergyPoint's interior wavenumber at the E = V0 threshold,
    where A and B are evaluated at a regularised value (T and R are exact
    limits there).
    """

    family: str
    t: Any
    a_r: Any
    b_r: Any
    r_r: Any
    r_l: Any
    a_l: Any
    b_l: Any
    k: Any
    q: Any
    degenerate: Any = False

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in ("t", "a_r", "b_r", "r_r", "r_l", "a_l", "b_l")}


def _check_k(k):
    if np.any(np.abs(k) < K_GUARD):
        raise ZeroWavenumber("scattering amplitudes are undefined at k = 0 (E = 0 threshold)")


def _split_degenerate(q, width):
    q = np.asarray(q, dtype=complex)
    degenerate = np.abs(q) * width < DEGENERATE_QL
    q_eval = np.where(degenerate, REGULARISED_QL / width, q)
    return degenerate, q_eval


def _finish(family, values, k, q, degenerate, limits):
    if np.any(degenerate):
        for name, limit in limits.items():
            values[name] = np.where(degenerate, limit, values[name])
    if np.ndim(values["t"]) == 0:
        values = {name: complex(v) for name, v in values.items()}
        k, q, degenerate = complex(k), complex(q), bool(degenerate)
    return CoefficientSet(family=family, k=k, q=q, degenerate=degenerate, **values)


def plus_amplitudes(cfg: PhysicalConfig, k, q) -> CoefficientSet:
    """Plus-family amplitudes for wavenumbers (k, q), vectorised."""
    k = np.asarray(k, dtype=complex)
    _check_k(k)
    a, b, L = cfg.a, cfg.b, cfg.width
    degenerate, q = _split_degenerate(q, L)
    r = q / k
    ep, em = np.exp(1j * q * L), np.exp(-1j * q * L)
    den = (1 - r) ** 2 * ep - (1 + r) ** 2 * em
    refl = (1 - r**2) * ep - (1 - r**2) * em
    values = {
        "t": np.exp(-1j * k * L) * (-4 * r) / den,
        "a_r": 2 * np.exp(-1j * k * b) * np.exp(-1j * q * a) * (1 - r) / den,
        "b_r": -2 * np.exp(-1j * k * b) * np.exp(1j * q * a) * (1 + r) / den,
        "r_r": np.exp(-2j * k * b) * refl / den,
        "r_l": np.exp(2j * k * a) * refl / den,
        "a_l": -2 * np.exp(1j * k * a) * np.exp(-1j * q * b) * (1 + r) / den,
        "b_l": 2 * np.exp(1j * k * a) * np.exp(1j * q * b) * (1 - r) / den,
    }
    kl = 1j * k * L
    limits = {
        "t": np.exp(-kl) * 2 / (2 - kl),
        "r_r": np.exp(-2j * k * b) * kl / (kl - 2),
        "r_l": np.exp(2j * k * a) * kl / (kl - 2),
    }
    return _finish("plus", values, k, q, degenerate, limits)


def star_amplitudes(cfg: PhysicalConfig, k, q) -> CoefficientSet:
    """Starred-family amplitudes for wavenumbers (k, q), vectorised."""
    k = np.asarray(k, dtype=complex)
    _check_k(k)
    a, b, L = cfg.a, cfg.b, cfg.width
    degenerate, q = _split_degenerate(q, L)
    r = q / k
    ep, em = np.exp(1j * q * L), np.exp(-1j * q * L)
    den = (1 - r) ** 2 * em - (1 + r) ** 2 * ep
    refl = (1 - r**2) * em - (1 - r**2) * ep
    values = {
        "t": np.exp(1j * k * L) * (-4 * r) / den,
        "a_r": 2 * np.exp(1j * k * b) * np.exp(1j * q * a) * (1 - r) / den,
        "b_r": -2 * np.exp(1j * k * b) * np.exp(-1j * q * a) * (1 + r) / den,
        "r_r": np.exp(2j * k * b) * refl / den,
        "r_l": np.exp(-2j * k * a) * refl / den,
        "a_l": -2 * np.exp(-1j * k * a) * np.exp(1j * q * b) * (1 + r) / den,
        "b_l": 2 * np.exp(-1j * k * a) * np.exp(-1j * q * b) * (1 - r) / den,
    }
    kl = 1j * k * L
    limits = {
        "t": np.exp(kl) * 2 / (2 + kl),
        "r_r": np.exp(2j * k * b) * kl / (kl + 2),
        "r_l": np.exp(-2j * k * a) * kl / (kl + 2),
    }
    return _finish("star", values, k, q, degenerate, limits)


def tilde_amplitudes(cfg: PhysicalConfig, kt, qt) -> CoefficientSet:
    """Tilde-family amplitudes for decaying wavenumbers (k_tilde, q_tilde)."""
    kt = np.asarray(kt, dtype=complex)
    _check_k(kt)
    a, b, L = cfg.a, cfg.b, cfg.width
    degenerate, qt = _split_degenerate(qt, L)
    r = qt / kt
    ep, em = np.exp(qt * L), np.exp(-qt * L)
    den = (1 + r) ** 2 * ep - (1 - r) ** 2 * em
    refl = (1 - r**2) * ep - (1 - r**2) * em
    values = {
        "t": np.exp(kt * L) * 4 * r / den,
        "a_r": -2 * np.exp(kt * b) * np.exp(qt * a) * (1 - r) / den,
        "b_r": 2 * np.exp(kt * b) * np.exp(-qt * a) * (1 + r) / den,
        "r_r": np.exp(2 * kt * b) * refl / den,
        "r_l": np.exp(-2 * kt * a) * refl / den,
        "a_l": 2 * np.exp(-kt * a) * np.exp(qt * b) * (1 + r) / den,
        "b_l": -2 * np.exp(-kt * a) * np.exp(-qt * b) * (1 - r) / den,
    }
    # same limits as the plus family under k = i k_tilde
    kl = -kt * L
    limits = {
        "t": np.exp(-kl) * 2 / (2 - kl),
        "r_r": np.exp(2 * kt * b) * kl / (kl - 2),
        "r_l": np.exp(-2 * kt * a) * kl / (kl - 2),
    }
    return _finish("tilde", values, kt, qt, degenerate, limits)


def plus_coefficients(cfg: PhysicalConfig, ep: EnergyPoint) -> CoefficientSet:
    return plus_amplitudes(cfg, ep.k, ep.q)


def star_coefficients(cfg: PhysicalConfig, ep: EnergyPoint) -> CoefficientSet:
    return star_amplitudes(cfg, ep.k, ep.q)


def tilde_coefficients(cfg: PhysicalConfig, ep: EnergyPoint) -> CoefficientSet:
    return tilde_amplitudes(cfg, ep.k_tilde, ep.q_tilde)


def coefficients(cfg: PhysicalConfig, ep: EnergyPoint, family: str) -> CoefficientSet:
    """Dispatch on ``family`` ("plus", "star" or "tilde"); "minus" is an alias of "star"."""
    if family == "plus":
        return plus_coefficients(cfg, ep)
    if family in ("star", "minus"):
        return star_coefficients(cfg, ep)
    if family == "tilde":
        return tilde_coefficients(cfg, ep)
    raise ValueError(f"unknown coefficient family {family!r}")


def unitarity_defect(cs: CoefficientSet):
    """max(| |T|^2+|R_l|^2-1 |, | |T|^2+|R_r|^2-1 |); meaningful for real k only."""
    t2 = np.abs(cs.t) ** 2
    return np.maximum(np.abs(t2 + np.abs(cs.r_l) ** 2 - 1), np.abs(t2 + np.abs(cs.r_r) ** 2 - 1))
