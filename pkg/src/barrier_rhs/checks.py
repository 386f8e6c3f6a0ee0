"""Catalogue of numerical identity checks driven by ``barrier-rhs verify``.

Every check returns a :class:`Check` carrying the measured value, its
tolerance and a short anchor describing the identity being probed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .coefficients import plus_amplitudes, star_amplitudes, tilde_amplitudes
from .core import PhysicalConfig, branch_sqrt, energy_point, physical_wavenumber
from .eigenfunctions import Eigenfunction, EigenfunctionId, chi, wronskian
from .greens import apply_resolvent, green_k, resolvent_kernel, verify_resolvent
from .oracles import barrier_transmission, transfer_matrix_amplitudes
from .spectral_measure import rho_interval
from .testspace import (COMMUTATORS, NormIndex, apply_operator, commutator_check, edge_values, make_test_function,
                        norm_nml)
from .transforms import QuadratureSpec, diagonalization_check, parseval_check, round_trip_error

DEFAULT_TOLERANCES = {
    "unitarity": 1e-12,
    "interrelation": 1e-12,
    "reflection": 1e-12,
    "oracle": 1e-10,
    "closed_form": 1e-10,
    "resonance": 1e-10,
    "threshold": 1e-4,
    "matching": 1e-11,
    "ode_residual": 1e-6,
    "wronskian": 1e-10,
    "conjugation": 1e-12,
    "resolvent": 1e-6,
    "unified_green": 1e-10,
    "resolvent_identity": 1e-5,
    "rho": 1e-6,
    "negative_mass": 1e-8,
    "round_trip": 1e-6,
    "parseval": 1e-6,
    "diagonalization": 1e-6,
    "commutator": 1e-7,
    "flatness": 1e-8,
    "norm_identity": 1e-8,
}

SUITES = ("coeffs", "eigen", "green", "measure", "transforms", "testspace")


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    value: float
    tolerance: float
    passed: bool

    def as_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _check(name, anchor, value, tol, upper=True) -> Check:
    value = float(value)
    ok = bool(np.isfinite(value) and (value <= tol if upper else value >= tol))
    return Check(name, anchor, value, tol, ok)


def _real_k_grid(n=200, lo=0.01, hi=20.0):
    return np.linspace(lo, hi, n + 1)[1:]


def _q_of(cfg, k):
    return branch_sqrt(cfg.scale * cfg.energy(k) - cfg.scale * cfg.v0)


# ---------------------------------------------------------------------------
# coefficients


def coefficient_checks(cfg: PhysicalConfig, tol: dict, fault: bool = False) -> list[Check]:
    k = _real_k_grid()
    q = _q_of(cfg, k)
    cs = plus_amplitudes(cfg, k, q)
    st = star_amplitudes(cfg, k, q)
    t = cs.t * (1 + 1e-6) if fault else cs.t
    t2 = np.abs(t) ** 2
    unit = max(np.max(np.abs(t2 + np.abs(cs.r_l) ** 2 - 1)), np.max(np.abs(t2 + np.abs(cs.r_r) ** 2 - 1)))
    inter = np.max(np.abs(cs.r_r * st.t + cs.t * st.r_l))
    minus_k = plus_amplitudes(cfg, -k, q)
    refl = np.max(np.abs(minus_k.t - st.t))

    oracle = 0.0
    for kk, qq in zip(k[::10], q[::10]):
        ref = transfer_matrix_amplitudes(cfg, kk, qq)
        one = plus_amplitudes(cfg, kk, qq).as_dict()
        oracle = max(oracle, max(abs(one[n] - ref[n]) for n in one), abs(one["t"] - ref["t_right"]))

    below = k[cfg.energy(k) < cfg.v0]
    closed = max((abs(abs(plus_amplitudes(cfg, kk, _q_of(cfg, kk)).t) ** 2 - barrier_transmission(cfg, cfg.energy(kk)))
                  for kk in below), default=0.0)
    e_res = cfg.v0 + (np.pi / cfg.width) ** 2 / cfg.scale
    ep = energy_point(cfg, e_res)
    res = abs(abs(plus_amplitudes(cfg, ep.k, ep.q).t) ** 2 - 1)
    sides = [abs(plus_amplitudes(cfg, p.k, p.q).t) ** 2
             for p in (energy_point(cfg, cfg.v0 - 1e-6), energy_point(cfg, cfg.v0 + 1e-6))]
    return [
        _check("unitarity", "flux conservation |T|^2 + |R|^2 = 1", unit, tol["unitarity"]),
        _check("interrelation", "R_r T* + T R*_l = 0", inter, tol["interrelation"]),
        _check("reflection_symmetry", "T(-k) = T*(k) for k > 0", refl, tol["reflection"]),
        _check("transfer_matrix_oracle", "closed-form amplitudes vs 2x2 interface matching", oracle, tol["oracle"]),
        _check("closed_form_transmission", "|T|^2 below the barrier vs sinh formula", closed, tol["closed_form"]),
        _check("transmission_resonance", "|T|^2 = 1 at Q (b - a) = pi", res, tol["resonance"]),
        _check("threshold_continuity", "|T|^2 continuous across E = V0", abs(sides[0] - sides[1]), tol["threshold"]),
    ]


# ---------------------------------------------------------------------------
# eigenfunctions


def matching_defect(cfg: PhysicalConfig, f: Eigenfunction) -> float:
    """Largest relative value/derivative jump at a and b."""
    h = 1e-13 * max(1.0, abs(cfg.a), abs(cfg.b))
    worst = 0.0
    for edge in (cfg.a, cfg.b):
        outer = edge - h if edge == cfg.a else edge + h
        v_in, v_out = f(np.array([edge]))[0], f(np.array([outer]))[0]
        d_in, d_out = f.derivative(np.array([edge]))[0], f.derivative(np.array([outer]))[0]
        worst = max(worst, abs(v_in - v_out) / max(abs(v_in), abs(v_out), 1e-300),
                    abs(d_in - d_out) / max(abs(d_in), abs(d_out), abs(v_in) * abs(f.coefficients.k), 1e-300))
    return worst


def ode_residual(cfg: PhysicalConfig, f: Eigenfunction, e: complex, step: float = 1e-4, guard: float = 1e-3) -> float:
    """max |(-hbar^2/2m) f'' + V f - E f| / (|E| max|f|) from central differences away from the edges."""
    x = np.linspace(cfg.a - 2 * cfg.width, cfg.b + 2 * cfg.width, 801)
    x = x[(np.abs(x - cfg.a) > guard) & (np.abs(x - cfg.b) > guard)]
    val = f(x)
    d2 = (f(x + step) - 2 * val + f(x - step)) / step**2
    res = -(cfg.hbar**2) / (2 * cfg.m) * d2 + cfg.potential(x) * val - e * val
    return float(np.max(np.abs(res)) / (abs(e) * np.max(np.abs(val))))


def eigen_checks(cfg: PhysicalConfig, tol: dict) -> list[Check]:
    match = 0.0
    for e in np.linspace(0.3, 3 * cfg.v0 + 1, 50):
        for fam in ("plus", "minus"):
            for side in ("left", "right"):
                match = max(match, matching_defect(cfg, Eigenfunction(cfg, EigenfunctionId(fam, side, energy_point(cfg, e)))))
    for e in np.linspace(-3 * cfg.v0 - 1, -0.3, 20):
        for side in ("left", "right"):
            match = max(match, matching_defect(cfg, Eigenfunction(cfg, EigenfunctionId("tilde", side, energy_point(cfg, e)))))

    ode = max(ode_residual(cfg, Eigenfunction(cfg, EigenfunctionId("plus", s, energy_point(cfg, e))), e)
              for e in (0.7, 5.0, 0.5 * cfg.v0 + 0.3, 2 * cfg.v0 + 1) for s in ("left", "right"))

    xs = np.array([cfg.a - 1.0, 0.5 * (cfg.a + cfg.b), cfg.b + 2.0, cfg.a - 0.3, cfg.b + 0.4])
    wr_err, wr_spread = 0.0, 0.0
    for e, fam, expected in (
        (-2.0, "tilde", lambda ep: -(cfg.m / (np.pi * cfg.hbar**2)) * tilde_amplitudes(cfg, ep.k_tilde, ep.q_tilde).t),
        (3 + 1j, "plus", lambda ep: 1j * cfg.m / (np.pi * cfg.hbar**2) * plus_amplitudes(cfg, ep.k, ep.q).t),
        (3 - 1j, "minus", lambda ep: -1j * cfg.m / (np.pi * cfg.hbar**2) * star_amplitudes(cfg, ep.k, ep.q).t),
    ):
        ep = energy_point(cfg, e)
        r = Eigenfunction(cfg, EigenfunctionId(fam, "right", ep))
        l = Eigenfunction(cfg, EigenfunctionId(fam, "left", ep))
        w = wronskian(r, l, xs)
        ref = expected(ep)
        wr_err = max(wr_err, np.max(np.abs(w - ref)) / abs(ref))
        wr_spread = max(wr_spread, (np.max(np.abs(w - w[0]))) / abs(ref))

    conj = 0.0
    for e in (3 + 0.2j, 0.5 + 2j, 12 - 1j, -4 + 0.5j):
        ep, epc = energy_point(cfg, e), energy_point(cfg, np.conj(e))
        for side in ("left", "right"):
            x = np.linspace(cfg.a - 2, cfg.b + 2, 41)
            a = np.conj(chi(cfg, EigenfunctionId("plus", side, epc), x))
            b = chi(cfg, EigenfunctionId("minus", side, ep), x)
            conj = max(conj, np.max(np.abs(a - b)) / np.max(np.abs(b)))

    return [
        _check("c1_matching", "value and derivative continuity at a and b", match, tol["matching"]),
        _check("ode_residual", "finite-difference Schrodinger residual", ode, tol["ode_residual"]),
        _check("wronskian_values", "W(chi_r, chi_l) = -(m/pi hbar^2) T~, (i m/pi hbar^2) T", wr_err, tol["wronskian"]),
        _check("wronskian_constancy", "Wronskian independent of x", wr_spread, tol["wronskian"]),
        _check("conjugation", "conj chi+(x; conj E) = chi-(x; E)", conj, tol["conjugation"]),
    ]


# ---------------------------------------------------------------------------
# Green functions


def green_checks(cfg: PhysicalConfig, tol: dict) -> list[Check]:
    pairs = [(-0.5, 2.3), (0.3, 0.7), (1.5, -2.0), (0.2, 0.2), (-3.0, -1.0)]
    sym, unified = 0.0, 0.0
    for e in (3 + 2j, 3 - 2j, -2 + 0.5j, -2 - 0.5j, -3.0):
        ker = resolvent_kernel(cfg, e)
        k = physical_wavenumber(cfg, e)
        for x, xp in pairs:
            g = ker(x, xp)
            sym = max(sym, abs(g - ker(xp, x)) / abs(g))
            unified = max(unified, abs(g - green_k(cfg, x, xp, k).value) / abs(g))

    phi = make_test_function(cfg, 0.5 * (cfg.a + cfg.b), 0.6 * cfg.width, 1.0)
    resid = max(verify_resolvent(cfg, phi, e) for e in (1 + 1j, 3 - 1j, -2 + 0.5j))
    scale = float(np.max(np.abs(phi(np.linspace(cfg.a - 5, cfg.b + 5, 2001)))))

    e1, e2 = 2 + 3j, -1 + 2j
    k1, k2 = resolvent_kernel(cfg, e1), resolvent_kernel(cfg, e2)
    window, bp = (cfg.a - 35.0, cfg.b + 35.0), (cfg.a, cfg.b)
    x = np.linspace(cfg.a - 3, cfg.b + 3, 15)
    lhs = apply_resolvent(k1, phi, x, window, bp) - apply_resolvent(k2, phi, x, window, bp)
    rhs = (e2 - e1) * apply_resolvent(k1, lambda y: apply_resolvent(k2, phi, y, window, bp), x, window, bp)
    ident = np.max(np.abs(lhs - rhs))
    return [
        _check("green_symmetry", "G(x, x') = G(x', x)", sym, tol["unified_green"]),
        _check("unified_green", "regional formulas equal the wave-number formula", unified, tol["unified_green"]),
        _check("resolvent_inverse", "int G (E - H) phi = phi at seven probes", resid / scale, tol["resolvent"]),
        _check("first_resolvent_identity", "G(E1) - G(E2) = (E2 - E1) G(E1) G(E2)", ident, tol["resolvent_identity"]),
    ]


# ---------------------------------------------------------------------------
# spectral measures


def measure_checks(cfg: PhysicalConfig, tol: dict) -> list[Check]:
    out = []
    for e1, e2 in ((1.0, 2.0), (0.5, 4.0)):
        rhos = {b: rho_interval(cfg, e1, e2, b).rho for b in ("initial", "final")}
        r = rhos["initial"]
        out.append(_check(f"rho_offdiag_{e1:g}_{e2:g}", "rho_12 = rho_21 = 0", max(abs(r[0, 1]), abs(r[1, 0])), tol["rho"]))
        diag = max(abs(r[0, 0] - (e2 - e1)), abs(r[1, 1] - (e2 - e1))) / (e2 - e1)
        out.append(_check(f"rho_lebesgue_{e1:g}_{e2:g}", "rho_11 = rho_22 = E2 - E1", diag, tol["rho"]))
        out.append(_check(f"rho_basis_{e1:g}_{e2:g}", "initial and final bases agree",
                          np.max(np.abs(rhos["initial"] - rhos["final"])), tol["rho"]))
    neg = rho_interval(cfg, -5.0, -1.0).rho
    out.append(_check("rho_negative_energies", "no spectral mass below zero", np.max(np.abs(neg)), tol["negative_mass"]))
    return out


# ---------------------------------------------------------------------------
# transforms and test space


def transform_checks(cfg: PhysicalConfig, tol: dict) -> list[Check]:
    spec = QuadratureSpec()
    phi = make_test_function(cfg, cfg.a - 2.5 * cfg.width, 0.4 * cfg.width, 3.0)
    psi = make_test_function(cfg, cfg.b + 4.0 * cfg.width, 0.6 * cfg.width, -2.0)
    rt = max(round_trip_error(cfg, phi, fam, spec) for fam in ("plus", "minus"))
    ip = parseval_check(cfg, phi, psi, spec)
    res, scale = diagonalization_check(cfg, phi, "plus", spec)
    return [
        _check("round_trip", "inverse(U phi) = phi", rt, tol["round_trip"]),
        _check("parseval", "(phi, psi) equal in position, energy, momentum", ip.max_spread(), tol["parseval"]),
        _check("diagonalization", "U H phi = E U phi", res / max(scale, 1e-300), tol["diagonalization"]),
    ]


def testspace_checks(cfg: PhysicalConfig, tol: dict) -> list[Check]:
    phi = make_test_function(cfg, 0.5 * (cfg.a + cfg.b), 0.8 * cfg.width, 1.2)
    scale = float(np.max(np.abs(phi(np.linspace(*phi.support, 4001)))))
    comm = max(commutator_check(cfg, phi, pair, n) for pair in COMMUTATORS for n in (1, 2)) / scale
    flat = max(np.max(np.abs(edge_values(cfg, f))) for f in (phi, apply_operator(cfg, phi, "H")))
    idx = NormIndex(1, 1, 1)
    lhs = norm_nml(cfg, apply_operator(cfg, phi, "H"), idx)
    rhs = norm_nml(cfg, phi, NormIndex(1, 1, 2))
    return [
        _check("commutators", "[Q,P], [H,Q], [H,P], [H^n,Q], [Q^n,P]", comm, tol["commutator"]),
        _check("edge_flatness", "phi and H phi flat at a and b", flat, tol["flatness"]),
        _check("norm_identity", "||H phi||_{n,m,l} = ||phi||_{n,m,l+1}", abs(lhs - rhs) / rhs, tol["norm_identity"]),
    ]


SUITE_FUNCS: dict[str, Callable] = {
    "coeffs": coefficient_checks,
    "eigen": eigen_checks,
    "green": green_checks,
    "measure": measure_checks,
    "transforms": transform_checks,
    "testspace": testspace_checks,
}


def run_suite(cfg: PhysicalConfig, suite: str = "all", tolerances: dict | None = None,
              fault: bool = False) -> list[Check]:
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
        fn = SUITE_FUNCS[name]
        out.extend(fn(cfg, tol, fault) if name == "coeffs" else fn(cfg, tol))
    return out
