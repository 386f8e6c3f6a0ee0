"""Wave-packet scattering and the V0 -> 0 limit, built on the transforms."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .coefficients import plus_amplitudes
from .core import PhysicalConfig, branch_sqrt
from .testspace import make_test_function, padded_window, x_rule
from .transforms import QuadratureSpec, evolve, forward_energy, fourier_values, free_reference, inverse_values


@dataclass(frozen=True)
class PacketConfig:
    """Gaussian packet launched from ``x0`` towards the barrier with mean energy ``energy``."""

    energy: float = 1.0
    width: float = 5.0
    x0: float = -25.0
    t_final: float = 60.0
    n_snapshots: int = 4
    k_span: float = 8.0
    n_k: int = 2001

    def mean_k(self, cfg: PhysicalConfig) -> float:
        return math.sqrt(cfg.scale * self.energy)

    def spec(self, cfg: PhysicalConfig) -> QuadratureSpec:
        k0, dk = self.mean_k(cfg), self.k_span / self.width
        return QuadratureSpec(k_min=max(1e-3, k0 - dk), k_max=k0 + dk, n_k=self.n_k)


@dataclass(frozen=True)
class PacketResult:
    times: np.ndarray
    x: np.ndarray
    density: np.ndarray
    transmitted: float
    predicted: float
    initial_error: float


def transmission_weight(cfg: PhysicalConfig, phi, spec: QuadratureSpec) -> float:
    """int |T(k)|^2 |phi~(k)|^2 dk over k > 0, normalised by ||phi||^2 (flux-weighted |T|^2)."""
    k = spec.k_grid()
    if cfg.v0 == 0:
        t2 = np.ones_like(k)
    else:
        q = branch_sqrt(cfg.scale * cfg.energy(k) - cfg.scale * cfg.v0)
        t2 = np.abs(plus_amplitudes(cfg, k, q).t) ** 2
    phat = fourier_values(cfg, phi, cfg.hbar * k, spec)
    dens = cfg.hbar * np.abs(phat) ** 2
    x, w = x_rule(cfg, padded_window(phi.support))
    norm = float(np.sum(w * np.abs(phi(x)) ** 2))
    return float(np.sum(spec.k_weights() * t2 * dens)) / norm


def run_wavepacket(cfg: PhysicalConfig, packet: PacketConfig = PacketConfig()) -> PacketResult:
    """Evolve a packet in the minus-family energy representation and measure what crosses the barrier."""
    spec = packet.spec(cfg)
    phi = make_test_function(cfg, packet.x0, packet.width, cfg.hbar * packet.mean_k(cfg))
    window = padded_window(phi.support)
    fhat = forward_energy(cfg, phi, "minus", spec, window)

    x0, w0 = spec.x_nodes(cfg, window)
    back = inverse_values(cfg, fhat, x0, spec)
    ref = phi(x0)
    initial_error = math.sqrt(np.sum(w0 * np.abs(back - ref) ** 2) / np.sum(w0 * np.abs(ref) ** 2))
    norm = float(np.sum(w0 * np.abs(ref) ** 2))

    v_max = cfg.hbar * spec.k_max / cfg.m
    reach = v_max * packet.t_final + abs(packet.x0) + 10 * packet.width
    xs = np.linspace(-reach, reach, 1201)
    times = np.linspace(0.0, packet.t_final, packet.n_snapshots)
    density = np.array([np.abs(evolve(cfg, fhat, t, xs, spec)) ** 2 for t in times]) / norm

    xt, wt = x_rule(cfg, (cfg.b, cfg.b + reach), spec.k_max)
    late = evolve(cfg, fhat, packet.t_final, xt, spec)
    transmitted = float(np.sum(wt * np.abs(late) ** 2)) / norm
    return PacketResult(times, xs, density, transmitted, transmission_weight(cfg, phi, spec), initial_error)


@dataclass(frozen=True)
class FreeLimitRow:
    v0: float
    max_t_defect: float
    max_r_left: float
    transform_distance: float


FREE_LIMIT_SEQUENCE = (1.0, 0.1, 0.01, 1e-4)


def free_limit_table(base: PhysicalConfig, v0_sequence=FREE_LIMIT_SEQUENCE, k_band=(0.5, 10.0), n_band: int = 400,
                     spec: QuadratureSpec | None = None, packet=(-4.0, 1.0, 4.0)) -> list[FreeLimitRow]:
    """Defects max|T - 1|, max|R_l| on ``k_band`` and the L^2 distance between plus-family energy
    data and the Fourier-derived free reference, relative to ||phi||, for each V0."""
    spec = spec or QuadratureSpec()
    kb = np.linspace(*k_band, n_band)
    rows = []
    for v0 in v0_sequence:
        cfg = replace(base, v0=float(v0))
        q = branch_sqrt(cfg.scale * cfg.energy(kb) - cfg.scale * cfg.v0)
        cs = plus_amplitudes(cfg, kb, q)
        phi = make_test_function(cfg, *packet)
        window = padded_window(phi.support)
        f = forward_energy(cfg, phi, "plus", spec, window)
        ref_l, ref_r = free_reference(cfg, phi, spec, window)
        we = spec.energy_weights(cfg)
        dist = np.sum(we * (np.abs(f.left_values - ref_l) ** 2 + np.abs(f.right_values - ref_r) ** 2))
        x, w = x_rule(cfg, window)
        norm = np.sum(w * np.abs(phi(x)) ** 2)
        rows.append(FreeLimitRow(float(v0), float(np.max(np.abs(cs.t - 1))), float(np.max(np.abs(cs.r_l))),
                                 float(math.sqrt(dist / norm))))
    return rows
