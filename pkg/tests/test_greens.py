import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from barrier_rhs.core import PhysicalConfig, physical_wavenumber
from barrier_rhs.errors import OnCut, TransmissionZero
from barrier_rhs.greens import (apply_resolvent, free_green, green, green_k, probe_points, region_of,
                                resolvent_kernel, resolvent_p_kernel, resolvent_q_kernel, unified_kernel,
                                verify_resolvent)
from barrier_rhs.quadrature import adaptive
from barrier_rhs.testspace import make_test_function

positions = st.floats(-4, 5)
off_cut = st.builds(complex, st.floats(-20, 20), st.floats(0.05, 10)) | \
    st.builds(complex, st.floats(-20, 20), st.floats(-10, -0.05)) | st.floats(-20, -0.05).map(complex)


def test_frozen_values(cfg):
    assert green(cfg, -0.5, 2.0, 3 + 2j).value == pytest.approx(-0.002375351586099871 + 0.0026684035396795924j,
                                                               abs=1e-15)
    assert green(cfg, 0.2, 0.7, -2.0).value == pytest.approx(-0.019082269402774056, abs=1e-15)


def test_regions():
    assert region_of(-1 + 3j) == "left_half"
    assert region_of(2 + 1j) == "first_quadrant"
    assert region_of(2 - 1j) == "fourth_quadrant"
    with pytest.raises(OnCut):
        region_of(4.0)
    with pytest.raises(OnCut):
        region_of(0.0)


@given(positions, positions, off_cut)
def test_symmetry_and_unified_form(x, xp, e):
    cfg = PhysicalConfig()
    g = green(cfg, x, xp, e).value
    assert g == green(cfg, xp, x, e).value
    unified = green_k(cfg, x, xp, physical_wavenumber(cfg, e)).value
    assert abs(g - unified) <= 1e-10 * max(abs(g), 1e-300)


@pytest.mark.parametrize("e", [-3 + 2j, -3 - 2j, -1.0])
def test_quadrant_formulas_extend_into_left_half(cfg, e):
    region = "first_quadrant" if e.imag >= 0 else "fourth_quadrant"
    if e.imag == 0:
        region = "first_quadrant"
    ker, ref = resolvent_kernel(cfg, e, region), resolvent_kernel(cfg, e)
    for x, xp in [(-1.0, 0.4), (0.3, 2.0)]:
        assert ker(x, xp) == pytest.approx(ref(x, xp), rel=1e-10)


def test_fourth_quadrant_boundary_is_negative_k(cfg):
    e, eps = 4.0, 1e-6
    below = green(cfg, -0.5, 1.7, e - 1j * eps).value
    assert below == pytest.approx(green_k(cfg, -0.5, 1.7, -np.sqrt(cfg.scale * e)).value, rel=1e-5)
    above = green(cfg, -0.5, 1.7, e + 1j * eps).value
    assert above == pytest.approx(green_k(cfg, -0.5, 1.7, np.sqrt(cfg.scale * e)).value, rel=1e-5)


@given(positions, positions, off_cut)
def test_free_limit_matches_free_kernel(x, xp, e):
    cfg = PhysicalConfig(v0=0.0)
    assert green(cfg, x, xp, e).value == pytest.approx(complex(free_green(cfg, x, xp, e)), rel=1e-10, abs=1e-14)


def test_transmission_zero_guard():
    # a wide barrier suppresses |T| far below the 1e-14 floor
    with pytest.raises(TransmissionZero):
        unified_kernel(PhysicalConfig(v0=10.0, a=0.0, b=10.0), 0.5)


@pytest.mark.parametrize("params", [(-3.0, 1.0, 0.0), (0.5, 0.7, 2.0), (4.0, 1.5, -1.0)])
@pytest.mark.parametrize("e", [1 + 1j, 3 - 1j, -2 + 0.5j])
def test_verify_resolvent(cfg, params, e):
    phi = make_test_function(cfg, *params)
    assert verify_resolvent(cfg, phi, e) <= 1e-6


def test_verify_resolvent_zero_function(cfg):
    phi = make_test_function(cfg) * 0.0
    assert verify_resolvent(cfg, phi, 1 + 1j) == 0.0


def test_probe_points(cfg):
    p = probe_points(cfg)
    assert len(p) == 7
    assert sum(min(abs(x - cfg.a), abs(x - cfg.b)) <= 0.1 for x in p) >= 2


def test_first_resolvent_identity(cfg):
    phi = make_test_function(cfg, 0.5, 0.6, 1.0)
    e1, e2 = 2 + 3j, -1 + 2j
    k1, k2 = resolvent_kernel(cfg, e1), resolvent_kernel(cfg, e2)
    window, bp = (-35.0, 36.0), (cfg.a, cfg.b)
    x = np.linspace(-3, 4, 9)
    lhs = apply_resolvent(k1, phi, x, window, bp) - apply_resolvent(k2, phi, x, window, bp)
    rhs = (e2 - e1) * apply_resolvent(k1, lambda y: apply_resolvent(k2, phi, y, window, bp), x, window, bp)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_position_resolvent():
    ker = resolvent_q_kernel(0.5, 0.5, 1 + 1j)
    assert ker.delta
    assert ker.apply(lambda x: 2.0) == pytest.approx(2 / (0.5 + 1j))
    with pytest.raises(OnCut):
        resolvent_q_kernel(0.0, 0.0, 2.0)


def test_momentum_resolvent_inverts_p_minus_p(cfg):
    # (p - P) e^{...} kernel: int K(x, x') (p - P) f(x') dx' = f(x) for a Gaussian
    p = 1.0 + 0.7j
    def pf(y):
        f = np.exp(-y**2)
        return p * f - (-1j * cfg.hbar) * (-2 * y * f)

    for x0 in (-0.7, 0.0, 1.2):
        val = adaptive(lambda y: resolvent_p_kernel(cfg, x0, y, p) * pf(y), -12.0, 12.0, points=(x0,))
        assert val == pytest.approx(np.exp(-x0**2), abs=1e-8)
    with pytest.raises(OnCut):
        resolvent_p_kernel(cfg, 0.0, 0.0, 1.0)
