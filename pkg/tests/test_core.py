import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from barrier_rhs.core import PhysicalConfig, branch_sqrt, energy_point, physical_wavenumber, wavenumber_point

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_negative_real_axis_maps_to_positive_imaginary():
    assert branch_sqrt(-4.0 + 0j) == pytest.approx(2j)
    assert branch_sqrt(complex(-4.0, -0.0)) == pytest.approx(2j)
    arr = branch_sqrt(np.array([complex(-9.0, -0.0), -1.0 + 0j]))
    np.testing.assert_allclose(arr, [3j, 1j], atol=1e-15)


def test_frozen_values():
    assert branch_sqrt(1j) == pytest.approx(complex(0.7071067811865476, 0.7071067811865475), abs=1e-16)


@given(finite, finite)
def test_branch_sqrt_squares_back_with_nonnegative_real_part(re, im):
    z = complex(re, im)
    w = branch_sqrt(z)
    assert abs(w * w - z) <= 1e-12 * max(1.0, abs(z))
    assert w.real >= -1e-15
    if w.real == 0:
        assert w.imag >= 0


@given(finite, finite)
def test_scalar_and_array_paths_agree(re, im):
    z = complex(re, im)
    assert branch_sqrt(np.array([z]))[0] == pytest.approx(branch_sqrt(z), abs=1e-12)


@given(st.floats(-50, 50), st.floats(-50, 50).filter(lambda v: v != 0))
def test_physical_wavenumber_has_nonnegative_imaginary_part(re, im):
    cfg = PhysicalConfig()
    k = physical_wavenumber(cfg, complex(re, im))
    assert k.imag >= 0
    assert cfg.energy(k) == pytest.approx(complex(re, im), rel=1e-12, abs=1e-12)


def test_energy_point_wavenumbers():
    cfg = PhysicalConfig(v0=10.0)
    ep = energy_point(cfg, 5.0)
    assert ep.k == pytest.approx(np.sqrt(10.0))
    assert ep.q == pytest.approx(1j * np.sqrt(10.0))
    assert ep.k_tilde == pytest.approx(1j * np.sqrt(10.0))
    ep = energy_point(cfg, -2.0)
    assert ep.k_tilde == pytest.approx(2.0)
    assert ep.q_tilde == pytest.approx(np.sqrt(24.0))


def test_wavenumber_point_keeps_sheet():
    cfg = PhysicalConfig()
    ep = wavenumber_point(cfg, -3.0)
    assert ep.k == -3.0
    assert ep.e == pytest.approx(4.5)
    assert ep.k_tilde == pytest.approx(3j)


@pytest.mark.parametrize("kwargs", [dict(a=1.0, b=0.0), dict(v0=-1.0), dict(m=0.0), dict(hbar=-1.0)])
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        PhysicalConfig(**kwargs)


def test_free_particle_accepted_and_potential():
    cfg = PhysicalConfig(v0=0.0)
    assert cfg.width == 1.0
    np.testing.assert_array_equal(PhysicalConfig(v0=3.0).potential([-1.0, 0.0, 0.5, 1.0, 2.0]), [0, 3, 3, 3, 0])


def test_nonfinite_energy_rejected():
    with pytest.raises(ValueError):
        energy_point(PhysicalConfig(), complex(float("nan"), 0))
