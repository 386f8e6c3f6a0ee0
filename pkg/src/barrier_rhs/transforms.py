"""Energy, wave-number and momentum representations of position-space functions.

The energy transforms are

    f^{+-}_{l,r}(E) = int phi(x) conj(chi^{+-}_{l,r}(x; E)) dx,
    phi(x)          = sum_{l,r} int_0^inf f_{l,r}(E) chi_{l,r}(x; E) dE,

and every energy integral is done in k with dE = (hbar^2 k / m) dk on a
uniform k grid (composite Simpson).  Position integrals use composite
Gauss-Legendre panels that resolve e^{i k_max x} and are refined near the
barrier edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .coefficients import plus_amplitudes, star_amplitudes
from .core import PhysicalConfig, branch_sqrt
from .eigenfunctions import SampledFunction, _rates, pieces, prefactor
from .errors import TailMass
from .quadrature import simpson_weights
from .testspace import TestFunction, apply_word, padded_window, x_rule

SIDES = ("left", "right")


@dataclass(frozen=True)
class QuadratureSpec:
    """Grids and tolerances for the spectral integrals.

    ``n_k`` must be odd (composite Simpson).  ``x_window`` defaults to the
    test function's support padded by ``pad`` on each side.
    """

    k_min: float = 1e-3
    k_max: float = 40.0
    n_k: int = 4001
    x_window: tuple[float, float] | None = None
    x_order: int = 20
    pad: float = 0.25
    abs_tol: float = 1e-9
    rel_tol: float = 1e-8
    tail_tol: float = 1e-10
    tail_fraction: float = 0.05
    chunk: int = 500

    def __post_init__(self):
        if not 0 < self.k_min < self.k_max:
            raise ValueError("need 0 < k_min < k_max")
        if self.n_k < 3 or self.n_k % 2 == 0:
            raise ValueError("n_k must be odd and >= 3 for composite Simpson")
        if self.x_window is not None and not self.x_window[1] > self.x_window[0]:
            raise ValueError("x_window must be an increasing pair")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")

    def k_grid(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, self.n_k)

    def k_weights(self) -> np.ndarray:
        return simpson_weights(self.n_k, (self.k_max - self.k_min) / (self.n_k - 1))

    def energy_weights(self, cfg: PhysicalConfig) -> np.ndarray:
        """Weights for int dE evaluated on the k grid."""
        return self.k_weights() * cfg.hbar**2 * self.k_grid() / cfg.m

    def window_for(self, phi) -> tuple[float, float]:
        if self.x_window is not None:
            return self.x_window
        return padded_window(phi.support, self.pad)

    def x_nodes(self, cfg: PhysicalConfig, window):
        return x_rule(cfg, window, self.k_max, self.x_order)


@dataclass(frozen=True)
class TwoComponentSpectralFunction:
    """(f_l, f_r) on an energy or wave-number grid; ``k`` is always stored."""

    axis: str
    grid: np.ndarray
    left_values: np.ndarray
    right_values: np.ndarray
    family: str
    k: np.ndarray
    window: tuple[float, float] | None = None

    def __post_init__(self):
        if self.axis not in ("energy", "wavenumber"):
            raise ValueError("axis must be energy or wavenumber")
        if self.family not in ("plus", "minus"):
            raise ValueError("family must be plus or minus")
        if np.any(self.k <= 0):
            raise ValueError("grid must stay above k = 0")

    def component(self, side: str) -> np.ndarray:
        return self.left_values if side == "left" else self.right_values

    def scaled(self, left_factor, right_factor=None) -> "TwoComponentSpectralFunction":
        right_factor = left_factor if right_factor is None else right_factor
        return replace(self, left_values=self.left_values * left_factor, right_values=self.right_values * right_factor)


# ---------------------------------------------------------------------------
# eigenfunction matrices


def chi_matrix(cfg: PhysicalConfig, family: str, side: str, k: np.ndarray, x: np.ndarray) -> np.ndarray:
    """chi_{side}(x_j; E(k_i)) for real k > 0, shape (len(k), len(x))."""
    cs = _amplitudes(cfg, family, np.asarray(k, dtype=float)[:, None])
    return prefactor(cfg, cs.k) * pieces(cfg, family, side, cs, np.asarray(x, dtype=float)[None, :])


def _check_family(family):
    if family not in ("plus", "minus"):
        raise ValueError("family must be plus or minus")


def _sample(phi, x):
    return phi(x) if callable(phi) else np.asarray(phi, dtype=complex)


def _amplitudes(cfg: PhysicalConfig, family: str, k: np.ndarray):
    k = np.asarray(k, dtype=float)
    q = branch_sqrt(cfg.scale * cfg.energy(k) - cfg.scale * cfg.v0)
    return plus_amplitudes(cfg, k, q) if family == "plus" else star_amplitudes(cfg, k, q)


def region_terms(cfg: PhysicalConfig, family: str, side: str, cs):
    """Per region: (mask builder, rate u, alpha, beta) with chi = pref (alpha e^{ux} + beta e^{-ux})."""
    u, w = _rates(family, cs)
    one, zero = np.ones_like(cs.t), np.zeros_like(cs.t)
    if side == "left":
        coefs = ((u, one, cs.r_l), (w, cs.a_l, cs.b_l), (u, cs.t, zero))
    else:
        coefs = ((u, zero, cs.t), (w, cs.a_r, cs.b_r), (u, cs.r_r, one))
    masks = (lambda x: x < cfg.a, lambda x: (x >= cfg.a) & (x <= cfg.b), lambda x: x > cfg.b)
    return tuple((m,) + c for m, c in zip(masks, coefs))


def _exp_pair(rate, x):
    """(e^{rate x}, e^{-rate x}) as (len(rate), len(x)) matrices, sharing work when rate is imaginary."""
    ex = np.exp(np.multiply.outer(rate, x))
    if np.all(rate.real == 0):
        return ex, np.conj(ex)
    return ex, np.exp(-np.multiply.outer(rate, x))


def forward_on_nodes(cfg: PhysicalConfig, values: np.ndarray, x: np.ndarray, w: np.ndarray, k: np.ndarray,
                     family: str, chunk: int = 500):
    """Both components of int f conj(chi) dx from samples on a quadrature rule.

    Within each region chi is two exponentials, so the integral reduces to
    two partial Laplace/Fourier sums per region.
    """
    fw = np.asarray(values, dtype=complex) * w
    out = {side: np.zeros(len(k), dtype=complex) for side in SIDES}
    for start in range(0, len(k), chunk):
        sl = slice(start, start + chunk)
        cs = _amplitudes(cfg, family, k[sl])
        pref = np.conj(prefactor(cfg, cs.k))
        sums = {}
        for side in SIDES:
            for idx, (mask, rate, alpha, beta) in enumerate(region_terms(cfg, family, side, cs)):
                sel = mask(x)
                if not np.any(sel):
                    continue
                if idx not in sums:
                    # the rate of a region is shared by both sides
                    ep, em = _exp_pair(np.conj(rate), x[sel])
                    sums[idx] = (ep @ fw[sel], em @ fw[sel])
                plus, minus = sums[idx]
                out[side][sl] += pref * (np.conj(alpha) * plus + np.conj(beta) * minus)
    return out["left"], out["right"]


def inverse_on_points(cfg: PhysicalConfig, family: str, k: np.ndarray, coef_l: np.ndarray, coef_r: np.ndarray,
                      x: np.ndarray, chunk: int = 500) -> np.ndarray:
    """sum_i [coef_l_i chi_l(x; k_i) + coef_r_i chi_r(x; k_i)] at points x."""
    out = np.zeros(x.shape, dtype=complex)
    for start in range(0, len(k), chunk):
        sl = slice(start, start + chunk)
        cs = _amplitudes(cfg, family, k[sl])
        pref = prefactor(cfg, cs.k)
        terms = {side: region_terms(cfg, family, side, cs) for side in SIDES}
        for idx in range(3):
            sel = terms["left"][idx][0](x)
            if not np.any(sel):
                continue
            rate = terms["left"][idx][1]
            ep, em = _exp_pair(rate, x[sel])
            ca = sum(c[sl] * pref * terms[s][idx][2] for s, c in (("left", coef_l), ("right", coef_r)))
            cb = sum(c[sl] * pref * terms[s][idx][3] for s, c in (("left", coef_l), ("right", coef_r)))
            out[sel] += ca @ ep + cb @ em
    return out


def forward_energy(cfg: PhysicalConfig, phi, family: str = "plus", spec: QuadratureSpec | None = None,
                   window=None) -> TwoComponentSpectralFunction:
    """f_{l,r}(E) = int phi(x) conj(chi_{l,r}(x; E)) dx on the energy grid induced by the QuadratureSpec k grid.

    ``phi`` is a TestFunction or any vectorised callable; for plain callables
    pass ``window`` (or set ``spec.x_window``).
    """
    _check_family(family)
    spec = spec or QuadratureSpec()
    window = window or spec.window_for(phi)
    x, w = spec.x_nodes(cfg, window)
    k = spec.k_grid()
    left, right = forward_on_nodes(cfg, _sample(phi, x), x, w, k, family, spec.chunk)
    return TwoComponentSpectralFunction("energy", cfg.energy(k), left, right, family, k, tuple(window))


def tail_fraction(cfg: PhysicalConfig, fhat: TwoComponentSpectralFunction, spec: QuadratureSpec) -> float:
    """Share of sum |f_l|^2 + |f_r|^2 dE carried by the top ``tail_fraction`` of the k grid."""
    density = (np.abs(fhat.left_values) ** 2 + np.abs(fhat.right_values) ** 2) * spec.energy_weights(cfg)
    total = float(np.sum(density))
    if total == 0:
        return 0.0
    cut = fhat.k >= spec.k_max - spec.tail_fraction * (spec.k_max - spec.k_min)
    return float(np.sum(density[cut])) / total


def _energy_amplitudes(cfg, fhat, spec):
    """Per-node weights turning the k-grid sum into int dE."""
    if fhat.axis == "energy":
        return spec.energy_weights(cfg), 1.0
    # wave-number data V = sqrt(hbar^2 k / m) f
    jac = np.sqrt(cfg.hbar**2 * fhat.k / cfg.m)
    return spec.k_weights(), jac


def inverse_values(cfg: PhysicalConfig, fhat: TwoComponentSpectralFunction, x, spec: QuadratureSpec | None = None,
                   check_tail: bool = True) -> np.ndarray:
    """sum_{l,r} int dE f_{l,r}(E) chi_{l,r}(x; E) at arbitrary points x."""
    spec = spec or QuadratureSpec()
    if len(fhat.k) != spec.n_k or not np.allclose(fhat.k, spec.k_grid()):
        raise ValueError("spectral data were not sampled on this spec's k grid")
    if check_tail:
        frac = tail_fraction(cfg, fhat, spec)
        if frac > spec.tail_tol:
            raise TailMass(f"{frac:.3g} of the spectral mass sits at the top of the k grid; raise k_max")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    wts, jac = _energy_amplitudes(cfg, fhat, spec)
    scale = wts * jac
    return inverse_on_points(cfg, fhat.family, fhat.k, fhat.left_values * scale, fhat.right_values * scale, x,
                             spec.chunk)


def inverse_energy(cfg: PhysicalConfig, fhat: TwoComponentSpectralFunction, spec: QuadratureSpec | None = None,
                   x=None) -> SampledFunction:
    """Position-space reconstruction, sampled on the quadrature rule of ``fhat.window``."""
    spec = spec or QuadratureSpec()
    window = fhat.window or spec.x_window
    if x is None:
        if window is None:
            raise ValueError("no x window: pass x or set spec.x_window")
        xs, ws = spec.x_nodes(cfg, window)
        return SampledFunction("position", xs, inverse_values(cfg, fhat, xs, spec), ws, tuple(window), "gauss-legendre")
    xs = np.asarray(x, dtype=float)
    return SampledFunction("position", xs, inverse_values(cfg, fhat, xs, spec), None, window, "samples")


def wavenumber_transform(cfg: PhysicalConfig, phi, family: str = "plus", spec: QuadratureSpec | None = None,
                         window=None) -> TwoComponentSpectralFunction:
    """Components against the k-normalised eigenfunctions sqrt(hbar^2 k / m) chi."""
    f = forward_energy(cfg, phi, family, spec, window)
    jac = np.sqrt(cfg.hbar**2 * f.k / cfg.m)
    return replace(f.scaled(jac), axis="wavenumber", grid=f.k)


def inverse_wavenumber(cfg: PhysicalConfig, vhat: TwoComponentSpectralFunction, spec: QuadratureSpec | None = None,
                       x=None) -> SampledFunction:
    if vhat.axis != "wavenumber":
        raise ValueError("expected wave-number data")
    return inverse_energy(cfg, vhat, spec, x)


def spectral_inner(cfg: PhysicalConfig, f: TwoComponentSpectralFunction, g: TwoComponentSpectralFunction,
                   spec: QuadratureSpec, power: int = 0) -> complex:
    """sum_{l,r} int E^power conj(f) g dE."""
    w = spec.energy_weights(cfg) * cfg.energy(f.k) ** power
    return complex(sum(np.sum(w * np.conj(f.component(s)) * g.component(s)) for s in SIDES))


# ---------------------------------------------------------------------------
# momentum representation


def momentum_grid(cfg: PhysicalConfig, spec: QuadratureSpec) -> np.ndarray:
    p_max = cfg.hbar * spec.k_max
    return np.linspace(-p_max, p_max, 2 * spec.n_k - 1)


def fourier_values(cfg: PhysicalConfig, phi, p, spec: QuadratureSpec | None = None, window=None) -> np.ndarray:
    """(2 pi hbar)^{-1/2} int phi(x) e^{-ipx/hbar} dx at arbitrary momenta p."""
    spec = spec or QuadratureSpec()
    window = window or spec.window_for(phi)
    x, w = spec.x_nodes(cfg, window)
    fw = _sample(phi, x) * w
    ps = np.atleast_1d(np.asarray(p, dtype=float))
    vals = np.empty(len(ps), dtype=complex)
    for start in range(0, len(ps), spec.chunk):
        pp = ps[start:start + spec.chunk, None]
        vals[start:start + spec.chunk] = np.exp(-1j * pp * x[None, :] / cfg.hbar) @ fw
    return vals / math.sqrt(2 * math.pi * cfg.hbar)


def fourier(cfg: PhysicalConfig, phi, spec: QuadratureSpec | None = None, p=None, window=None) -> SampledFunction:
    """Momentum representation; the default p grid is uniform on [-hbar k_max, hbar k_max] with Simpson weights."""
    spec = spec or QuadratureSpec()
    if p is None:
        ps = momentum_grid(cfg, spec)
        weights, rule = simpson_weights(len(ps), ps[1] - ps[0]), "simpson"
    else:
        ps, weights, rule = np.atleast_1d(np.asarray(p, dtype=float)), None, "samples"
    vals = fourier_values(cfg, phi, ps, spec, window)
    return SampledFunction("momentum", ps, vals, weights, (float(ps.min()), float(ps.max())), rule)


def inverse_fourier(cfg: PhysicalConfig, phat: SampledFunction, x) -> np.ndarray:
    """(2 pi hbar)^{-1/2} int phat(p) e^{ipx/hbar} dp with the sample's weights."""
    if phat.weights is None:
        raise ValueError("momentum data need quadrature weights")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    cw = phat.values * phat.weights
    out = np.empty(len(x), dtype=complex)
    for start in range(0, len(x), 200):
        out[start:start + 200] = np.exp(1j * x[start:start + 200, None] * phat.grid[None, :] / cfg.hbar) @ cw
    return out / math.sqrt(2 * math.pi * cfg.hbar)


def free_reference(cfg: PhysicalConfig, phi, spec: QuadratureSpec | None = None, window=None):
    """Plus-family energy components of a free particle, built from the Fourier transform.

    f_l(E) = sqrt(m / (hbar k)) phihat(hbar k) and f_r(E) = sqrt(m / (hbar k)) phihat(-hbar k).
    """
    spec = spec or QuadratureSpec()
    k = spec.k_grid()
    jac = np.sqrt(cfg.m / (cfg.hbar * k))
    left = fourier_values(cfg, phi, cfg.hbar * k, spec, window) * jac
    right = fourier_values(cfg, phi, -cfg.hbar * k, spec, window) * jac
    return left, right


# ---------------------------------------------------------------------------
# checks


def position_inner(cfg: PhysicalConfig, phi, psi, spec: QuadratureSpec | None = None, window=None) -> complex:
    spec = spec or QuadratureSpec()
    if window is None:
        lo = min(phi.support[0], psi.support[0])
        hi = max(phi.support[1], psi.support[1])
        window = padded_window((lo, hi), spec.pad)
    x, w = spec.x_nodes(cfg, window)
    return complex(np.sum(w * np.conj(phi(x)) * psi(x)))


def _joint_window(phi, psi, spec):
    lo = min(phi.support[0], psi.support[0])
    hi = max(phi.support[1], psi.support[1])
    return padded_window((lo, hi), spec.pad)


def round_trip_error(cfg: PhysicalConfig, phi: TestFunction, family: str = "plus",
                     spec: QuadratureSpec | None = None, route: str = "energy") -> float:
    """Relative L^2 error of inverse(forward(phi)) along the energy, wave-number or momentum route."""
    spec = spec or QuadratureSpec()
    window = spec.window_for(phi)
    x, w = spec.x_nodes(cfg, window)
    ref = phi(x)
    if route == "energy":
        back = inverse_values(cfg, forward_energy(cfg, phi, family, spec, window), x, spec)
    elif route == "wavenumber":
        back = inverse_values(cfg, wavenumber_transform(cfg, phi, family, spec, window), x, spec)
    elif route == "momentum":
        back = inverse_fourier(cfg, fourier(cfg, phi, spec, window=window), x)
    else:
        raise ValueError(f"unknown route {route!r}")
    return math.sqrt(np.sum(w * np.abs(back - ref) ** 2) / np.sum(w * np.abs(ref) ** 2))


def unitarity_defect(cfg: PhysicalConfig, phi: TestFunction, family: str = "plus",
                     spec: QuadratureSpec | None = None) -> float:
    """| ||U phi||^2 / ||phi||^2 - 1 |."""
    spec = spec or QuadratureSpec()
    f = forward_energy(cfg, phi, family, spec)
    n_pos = position_inner(cfg, phi, phi, spec).real
    return abs(spectral_inner(cfg, f, f, spec).real / n_pos - 1)


@dataclass(frozen=True)
class InnerProducts:
    position: complex
    energy_plus: complex
    energy_minus: complex
    momentum: complex

    def max_spread(self) -> float:
        vals = [self.position, self.energy_plus, self.energy_minus, self.momentum]
        return max(abs(u - v) for u in vals for v in vals)


def parseval_check(cfg: PhysicalConfig, phi, psi, spec: QuadratureSpec | None = None) -> InnerProducts:
    """(phi, psi) in the position, energy (both families) and momentum representations."""
    spec = spec or QuadratureSpec()
    window = _joint_window(phi, psi, spec)
    energy = {}
    for fam in ("plus", "minus"):
        f = forward_energy(cfg, phi, fam, spec, window)
        g = forward_energy(cfg, psi, fam, spec, window)
        energy[fam] = spectral_inner(cfg, f, g, spec)
    fp, gp = fourier(cfg, phi, spec, window=window), fourier(cfg, psi, spec, window=window)
    momentum = complex(np.sum(fp.weights * np.conj(fp.values) * gp.values))
    return InnerProducts(position_inner(cfg, phi, psi, spec, window), energy["plus"], energy["minus"], momentum)


def diagonalization_check(cfg: PhysicalConfig, phi: TestFunction, family: str = "plus",
                          spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """(max |U(H phi) - E U(phi)|, max |E U(phi)|) over both components."""
    spec = spec or QuadratureSpec()
    window = spec.window_for(phi)
    f = forward_energy(cfg, phi, family, spec, window)
    hf = forward_energy(cfg, apply_word(cfg, phi, "H"), family, spec, window)
    e = f.grid
    res = max(np.max(np.abs(hf.component(s) - e * f.component(s))) for s in SIDES)
    scale = max(np.max(np.abs(e * f.component(s))) for s in SIDES)
    return float(res), float(scale)


def moment_check(cfg: PhysicalConfig, phi: TestFunction, psi: TestFunction, n: int, observable: str,
                 spec: QuadratureSpec | None = None) -> tuple[complex, complex]:
    """(phi, A^n psi) from the position-space action of A, and from A's own spectral representation.

    H is diagonal in the energy representation, P in the momentum
    representation and Q in the position representation (where the spectral
    side is the plain multiplier x^n on a separate uniform grid).
    """
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    spec = spec or QuadratureSpec()
    window = _joint_window(phi, psi, spec)
    direct = position_inner(cfg, phi, apply_word(cfg, psi, observable * n), spec, window)
    if observable == "H":
        f = forward_energy(cfg, phi, "plus", spec, window)
        g = forward_energy(cfg, psi, "plus", spec, window)
        spectral = spectral_inner(cfg, f, g, spec, power=n)
    elif observable == "P":
        fp, gp = fourier(cfg, phi, spec, window=window), fourier(cfg, psi, spec, window=window)
        spectral = complex(np.sum(fp.weights * fp.grid**n * np.conj(fp.values) * gp.values))
    elif observable == "Q":
        lo, hi = window
        xs = np.linspace(lo, hi, 2 * int((hi - lo) / 2e-3) + 1)
        ws = simpson_weights(len(xs), xs[1] - xs[0])
        spectral = complex(np.sum(ws * xs**n * np.conj(phi(xs)) * psi(xs)))
    else:
        raise ValueError("observable must be H, P or Q")
    return direct, spectral


def reconstruct_at(cfg: PhysicalConfig, phi, x, family: str = "plus", spec: QuadratureSpec | None = None):
    """<x|phi> rebuilt from the Dirac expansion sum_{l,r} int dE <x|E> <E|phi>."""
    spec = spec or QuadratureSpec()
    vals = inverse_values(cfg, forward_energy(cfg, phi, family, spec), x, spec)
    return complex(vals[0]) if np.ndim(x) == 0 else vals


def fourier_reconstruct_at(cfg: PhysicalConfig, phi, x, spec: QuadratureSpec | None = None):
    """<x|phi> rebuilt from int dp <x|p> <p|phi>."""
    spec = spec or QuadratureSpec()
    vals = inverse_fourier(cfg, fourier(cfg, phi, spec), x)
    return complex(vals[0]) if np.ndim(x) == 0 else vals


def evolve(cfg: PhysicalConfig, fhat: TwoComponentSpectralFunction, t: float, x,
           spec: QuadratureSpec | None = None) -> np.ndarray:
    """phi(x, t) = sum_{l,r} int dE e^{-iEt/hbar} f_{l,r}(E) chi_{l,r}(x; E)."""
    spec = spec or QuadratureSpec()
    phase = np.exp(-1j * cfg.energy(fhat.k) * t / cfg.hbar)
    return inverse_values(cfg, fhat.scaled(phase), x, spec)


def delta_normalization_check(cfg: PhysicalConfig, family: str = "plus", k_center: float = 3.0,
                              k_width: float = 0.3, spec: QuadratureSpec | None = None,
                              x_window=(-30.0, 31.0)) -> float:
    """max |forward(inverse(g)) - g| / max |g| for narrow-band spectral data g.

    g_l, g_r are Gaussians in k (negligible outside k_center +- 8 k_width);
    the round trip through position space returning g is the operational
    content of <E|E'> = delta(E - E').
    """
    spec = spec or QuadratureSpec()
    k = spec.k_grid()
    g_l = np.exp(-((k - k_center) / k_width) ** 2 / 2) * np.exp(0.7j * k)
    g_r = 0.5 * np.exp(-((k - k_center - 0.5) / k_width) ** 2 / 2)
    g = TwoComponentSpectralFunction("energy", cfg.energy(k), g_l, g_r, family, k, tuple(x_window))
    x, w = spec.x_nodes(cfg, x_window)
    phi = inverse_values(cfg, g, x, spec)
    left, right = forward_on_nodes(cfg, phi, x, w, k, family, spec.chunk)
    return float(max(np.max(np.abs(left - g_l)), np.max(np.abs(right - g_r))) / np.max(np.abs(g_l)))
