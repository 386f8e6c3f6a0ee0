import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barrier_rhs.core import PhysicalConfig
from barrier_rhs.errors import ExtrapolationUnstable, OnCut
from barrier_rhs.spectral_measure import (boundary_density, jump_density, rho_interval, richardson_odd,
                                          spectrum_verdict, theta_matrix)


@pytest.mark.parametrize("interval", [(1.0, 2.0), (0.5, 4.0), (9.5, 10.5)])
@pytest.mark.parametrize("basis", ["initial", "final"])
def test_rho_is_lebesgue_identity(cfg, interval, basis):
    e1, e2 = interval
    r = rho_interval(cfg, e1, e2, basis)
    assert abs(r.rho[0, 1]) <= 1e-6 and abs(r.rho[1, 0]) <= 1e-6
    assert abs(r.rho[0, 0] - (e2 - e1)) <= 1e-6 * (e2 - e1)
    assert abs(r.rho[1, 1] - (e2 - e1)) <= 1e-6 * (e2 - e1)
    assert r.imag_residual < 1e-10


def test_bases_agree(cfg):
    a = rho_interval(cfg, 0.5, 4.0, "initial").rho
    b = rho_interval(cfg, 0.5, 4.0, "final").rho
    np.testing.assert_allclose(a, b, atol=1e-6)


@pytest.mark.parametrize("interval", [(-5.0, -1.0), (-0.5, -0.01)])
def test_no_mass_below_zero(cfg, interval):
    assert np.max(np.abs(rho_interval(cfg, *interval).rho)) <= 1e-8


def test_interval_validation(cfg):
    with pytest.raises(ValueError):
        rho_interval(cfg, 2.0, 1.0)
    with pytest.raises(ValueError):
        rho_interval(cfg, -1.0, 1.0)


def test_extrapolation_instability_is_reported(cfg):
    # increasing epsilons make successive differences grow
    with pytest.raises(ExtrapolationUnstable):
        rho_interval(cfg, 1.0, 2.0, epsilons=(1e-5, 1e-2, 1.0))


@settings(max_examples=15)
@given(st.floats(0.05, 30), st.sampled_from(["initial", "final"]))
def test_boundary_density_is_identity_pointwise(e, basis):
    cfg = PhysicalConfig()
    dens = boundary_density(cfg, np.array([e]), basis)[0]
    np.testing.assert_allclose(dens, np.eye(2), atol=1e-8)


def test_theta_quadrants(cfg):
    th = theta_matrix(cfg, 3 + 2j, "initial")
    assert th.quadrant == "first" and th.entries[0, 0] == pytest.approx(2 * np.pi / 1j)
    th = theta_matrix(cfg, 3 - 2j, "final")
    assert th.quadrant == "fourth" and th.entries[0, 0] == pytest.approx(-2 * np.pi / 1j)
    th = theta_matrix(cfg, -2 + 1j)
    assert th.quadrant == "left_half" and th.entries[0, 0] == 0


def test_theta_on_cut_raises(cfg):
    with pytest.raises(OnCut):
        theta_matrix(cfg, 2.0)


def test_jump_density_small_in_resolvent_set(cfg):
    assert np.max(np.abs(jump_density(cfg, np.array([-3.0]), 1e-8))) < 1e-6


def test_richardson_odd_exact_on_odd_polynomial():
    eps = (1e-1, 1e-2, 1e-3)
    vals = [np.array([2.0 + 3 * e - 7 * e**3]) for e in eps]
    assert richardson_odd(vals, eps)[0] == pytest.approx(2.0, abs=1e-13)


def test_spectrum_verdict(cfg):
    pts = spectrum_verdict(cfg, [-5.0, 0.0, 5.0])
    assert [p.verdict for p in pts] == ["resolvent", "spectrum", "spectrum"]
    assert pts[0].jump < 1e-6
    assert pts[2].jump == pytest.approx(1.0, abs=1e-6)
    assert np.isnan(pts[1].jump)
