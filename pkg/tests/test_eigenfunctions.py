import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from barrier_rhs.checks import matching_defect, ode_residual
from barrier_rhs.coefficients import plus_amplitudes, star_amplitudes, tilde_amplitudes
from barrier_rhs.core import PhysicalConfig, energy_point
from barrier_rhs.eigenfunctions import (Eigenfunction, EigenfunctionId, SampledFunction, chi, eigenfunction,
                                        k_normalized_chi, plane_wave, wronskian)

barriers = st.builds(lambda v0, a, L: PhysicalConfig(v0=v0, a=a, b=a + L),
                     st.floats(0.5, 20), st.floats(-2, 2), st.floats(0.3, 2))


def test_frozen_value(cfg):
    val = chi(cfg, EigenfunctionId("plus", "left", energy_point(cfg, 5.0)), 0.5)
    assert val == pytest.approx(0.04802392508825683 - 0.04412340069738535j, abs=1e-14)


@pytest.mark.parametrize("family", ["plus", "minus"])
@pytest.mark.parametrize("side", ["left", "right"])
def test_c1_matching_on_50_energies(cfg, family, side):
    worst = max(matching_defect(cfg, eigenfunction(cfg, family, side, e)) for e in np.linspace(0.3, 31.0, 50))
    assert worst <= 1e-11


@pytest.mark.parametrize("side", ["left", "right"])
def test_c1_matching_tilde(cfg, side):
    worst = max(matching_defect(cfg, eigenfunction(cfg, "tilde", side, e)) for e in np.linspace(-31.0, -0.3, 50))
    assert worst <= 1e-11


@given(barriers, st.floats(0.2, 40), st.sampled_from(["plus", "minus"]), st.sampled_from(["left", "right"]))
def test_c1_matching_random_barriers(cfg, e, family, side):
    assert matching_defect(cfg, eigenfunction(cfg, family, side, e)) <= 1e-10


@pytest.mark.parametrize("e", [0.7, 5.0, 10.3, 21.0, 3 + 0.5j])
def test_schrodinger_residual(cfg, e):
    for side in ("left", "right"):
        assert ode_residual(cfg, eigenfunction(cfg, "plus", side, e), e) <= 1e-6


def test_schrodinger_residual_tilde(cfg):
    assert ode_residual(cfg, eigenfunction(cfg, "tilde", "left", -2.0), -2.0) <= 1e-6


def _wr(cfg, family, e):
    ep = energy_point(cfg, e)
    return (Eigenfunction(cfg, EigenfunctionId(family, "right", ep)),
            Eigenfunction(cfg, EigenfunctionId(family, "left", ep)), ep)


XS = np.array([-2.0, -0.3, 0.25, 0.8, 1.4, 3.0])


@pytest.mark.parametrize("e", [-0.5, -2.0, -15.0])
def test_wronskian_tilde(cfg, e):
    r, l, ep = _wr(cfg, "tilde", e)
    expected = -(cfg.m / (np.pi * cfg.hbar**2)) * tilde_amplitudes(cfg, ep.k_tilde, ep.q_tilde).t
    np.testing.assert_allclose(wronskian(r, l, XS), expected, rtol=1e-10)


@pytest.mark.parametrize("e", [3 + 1j, 0.5 + 0.1j, 20 + 4j, 5.0])
def test_wronskian_plus(cfg, e):
    r, l, ep = _wr(cfg, "plus", e)
    expected = 1j * cfg.m / (np.pi * cfg.hbar**2) * plus_amplitudes(cfg, ep.k, ep.q).t
    np.testing.assert_allclose(wronskian(r, l, XS), expected, rtol=1e-10)


@pytest.mark.parametrize("e", [3 - 1j, 5.0])
def test_wronskian_minus(cfg, e):
    r, l, ep = _wr(cfg, "minus", e)
    expected = -1j * cfg.m / (np.pi * cfg.hbar**2) * star_amplitudes(cfg, ep.k, ep.q).t
    np.testing.assert_allclose(wronskian(r, l, XS), expected, rtol=1e-10)


def test_finite_difference_wronskian_matches_analytic(cfg):
    r, l, _ = _wr(cfg, "plus", 4.0)
    plain_r, plain_l = (lambda x: r(x)), (lambda x: l(x))
    xs = np.array([-2.0, 0.5, 3.0])
    np.testing.assert_allclose(wronskian(plain_r, plain_l, xs), wronskian(r, l, xs), rtol=1e-8)


@given(st.floats(0.1, 30), st.floats(-5, 5).filter(lambda v: abs(v) > 1e-3), st.sampled_from(["left", "right"]))
def test_conjugation_relation(e_re, e_im, side):
    cfg = PhysicalConfig()
    e = complex(e_re, e_im)
    x = np.linspace(-2, 3, 11)
    lhs = np.conj(chi(cfg, EigenfunctionId("plus", side, energy_point(cfg, np.conj(e))), x))
    rhs = chi(cfg, EigenfunctionId("minus", side, energy_point(cfg, e)), x)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-300)


def test_real_energy_plus_minus_conjugate(cfg):
    x = np.linspace(-2, 3, 11)
    ep = energy_point(cfg, 7.0)
    for side in ("left", "right"):
        np.testing.assert_allclose(np.conj(chi(cfg, EigenfunctionId("plus", side, ep), x)),
                                   chi(cfg, EigenfunctionId("minus", side, ep), x), rtol=1e-13)


def test_k_normalisation_and_plane_wave(cfg):
    ep = energy_point(cfg, 3.0)
    idn = EigenfunctionId("plus", "left", ep)
    ratio = k_normalized_chi(cfg, idn, -1.0) / chi(cfg, idn, -1.0)
    assert ratio == pytest.approx(np.sqrt(ep.k.real))
    assert abs(plane_wave(cfg, 2.0, 1.5)) == pytest.approx(1 / np.sqrt(2 * np.pi))
    free = PhysicalConfig(v0=0.0)
    # free eigenfunctions are plane waves normalised per unit energy
    val = chi(free, EigenfunctionId("plus", "left", energy_point(free, 2.0)), 1.3)
    assert val == pytest.approx(np.sqrt(1 / (2 * np.pi * 2.0)) * np.exp(2j * 1.3), abs=1e-14)


def test_bad_ids_and_sampled_function():
    ep = energy_point(PhysicalConfig(), 1.0)
    with pytest.raises(ValueError):
        EigenfunctionId("sideways", "left", ep)
    with pytest.raises(ValueError):
        EigenfunctionId("plus", "up", ep)
    with pytest.raises(ValueError):
        SampledFunction("position", np.array([1.0, 0.0]), np.array([1.0, 2.0]))
    s = SampledFunction("position", np.array([0.0, 1.0]), np.array([1j, 2.0]), weights=np.array([0.5, 0.5]))
    assert s.norm() == pytest.approx(np.sqrt(2.5))


@pytest.mark.parametrize("width", [0.375, 1.0, 3.0])
def test_exact_threshold_uses_linear_interior(width):
    cfg = PhysicalConfig(v0=1.0, a=0.0, b=width)
    for family in ("plus", "minus"):
        for side in ("left", "right"):
            f = eigenfunction(cfg, family, side, cfg.v0)
            assert f.coefficients.degenerate
            assert matching_defect(cfg, f) <= 1e-11
            assert ode_residual(cfg, f, cfg.v0) <= 1e-6
