import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from barrier_rhs.coefficients import (coefficients, plus_amplitudes, plus_coefficients, star_amplitudes,
                                      tilde_amplitudes, unitarity_defect)
from barrier_rhs.core import PhysicalConfig, branch_sqrt, energy_point, wavenumber_point
from barrier_rhs.errors import ZeroWavenumber
from barrier_rhs.oracles import barrier_transmission, transfer_matrix_amplitudes

barriers = st.builds(
    lambda v0, a, L: PhysicalConfig(v0=v0, a=a, b=a + L),
    st.floats(0.5, 30), st.floats(-3, 3), st.floats(0.2, 3),
)
real_k = st.floats(0.01, 20)


def q_of(cfg, k):
    return branch_sqrt(cfg.scale * (cfg.energy(k) - cfg.v0))


def test_frozen_amplitudes(cfg):
    # values computed once with the default barrier and cross-checked against the oracle
    frozen = {
        2.0: (-0.025737414095898865 - 0.014007442534407855j, -0.5994848262415807 - 0.7998495609646874j),
        10.0: (-0.40163192924883107 + 0.07320150322588104j, 0.8333333333333334 - 0.37267799624996495j),
        15.0: (-0.6749430526453687 - 0.7377731990204752j, 0.0002851649856907921 - 0.011937385550292496j),
    }
    for e, (t, r_l) in frozen.items():
        cs = plus_coefficients(cfg, energy_point(cfg, e))
        assert cs.t == pytest.approx(t, abs=1e-13)
        assert cs.r_l == pytest.approx(r_l, abs=1e-13)


@given(barriers, real_k)
def test_unitarity_and_interrelation(cfg, k):
    q = q_of(cfg, k)
    cs, st_ = plus_amplitudes(cfg, k, q), star_amplitudes(cfg, k, q)
    assert unitarity_defect(cs) < 1e-11
    assert abs(cs.r_r * st_.t + cs.t * st_.r_l) < 1e-11


@given(barriers, real_k)
def test_star_is_plus_at_negative_k_and_conjugate(cfg, k):
    q = q_of(cfg, k)
    plus, star = plus_amplitudes(cfg, k, q), star_amplitudes(cfg, k, q)
    minus_k = plus_amplitudes(cfg, -k, q)
    assert abs(minus_k.t - star.t) < 1e-12
    assert abs(star.t - np.conj(plus.t)) < 1e-12
    assert abs(star.r_l - np.conj(plus.r_l)) < 1e-12


@given(barriers, st.floats(0.05, 15))
def test_tilde_is_plus_continued(cfg, kt):
    qt = branch_sqrt(cfg.scale * cfg.v0 + kt * kt)
    tilde = tilde_amplitudes(cfg, kt, qt)
    ep = wavenumber_point(cfg, 1j * kt)
    plus = plus_amplitudes(cfg, ep.k, ep.q)
    for name in ("t", "r_l", "r_r"):
        assert getattr(tilde, name) == pytest.approx(getattr(plus, name), rel=1e-9, abs=1e-12)


@given(barriers, real_k)
def test_oracle_equivalence(cfg, k):
    q = q_of(cfg, k)
    # the 2x2 oracle loses digits like exp(2 |Im q| L) when tunnelling deeply
    assume(1e-3 < abs(q) * cfg.width and abs(q.imag) * cfg.width < 5)
    ref = transfer_matrix_amplitudes(cfg, k, q)
    cs = plus_amplitudes(cfg, k, q).as_dict()
    scale = max(1.0, max(abs(v) for v in cs.values()))
    for name, val in cs.items():
        assert abs(val - ref[name]) <= 1e-9 * scale, name
    assert abs(cs["t"] - ref["t_right"]) <= 1e-10


@given(barriers, st.floats(0.01, 0.999))
def test_closed_form_transmission_below_barrier(cfg, frac):
    e = frac * cfg.v0
    ep = energy_point(cfg, e)
    assert abs(abs(plus_coefficients(cfg, ep).t) ** 2 - barrier_transmission(cfg, e)) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transmission_resonances(cfg, n):
    e = cfg.v0 + (n * np.pi / cfg.width) ** 2 / cfg.scale
    assert abs(abs(plus_coefficients(cfg, energy_point(cfg, e)).t) ** 2 - 1) < 1e-10


def test_threshold_limits_are_continuous(cfg):
    at = plus_coefficients(cfg, energy_point(cfg, cfg.v0))
    assert abs(at.t) ** 2 == pytest.approx(barrier_transmission(cfg, cfg.v0), abs=1e-14)
    for de in (1e-7, -1e-7):
        near = plus_coefficients(cfg, energy_point(cfg, cfg.v0 + de))
        assert abs(near.t - at.t) < 1e-6
        assert abs(near.r_l - at.r_l) < 1e-6


def test_free_particle_has_no_reflection():
    cfg = PhysicalConfig(v0=0.0)
    k = np.linspace(0.1, 10, 50)
    cs = plus_amplitudes(cfg, k, q_of(cfg, k))
    np.testing.assert_allclose(cs.t, 1.0, atol=1e-14)
    np.testing.assert_allclose(cs.r_l, 0.0, atol=1e-14)


def test_zero_wavenumber_raises(cfg):
    with pytest.raises(ZeroWavenumber):
        plus_amplitudes(cfg, 0.0, q_of(cfg, 0.0))


def test_dispatch(cfg):
    ep = energy_point(cfg, 3.0)
    assert coefficients(cfg, ep, "minus").t == coefficients(cfg, ep, "star").t
    with pytest.raises(ValueError):
        coefficients(cfg, ep, "bogus")


def test_vectorised_matches_scalar(cfg):
    k = np.array([0.5, 3.0, 7.0])
    vec = plus_amplitudes(cfg, k, q_of(cfg, k))
    for i, kk in enumerate(k):
        assert vec.t[i] == pytest.approx(plus_amplitudes(cfg, kk, q_of(cfg, kk)).t, abs=1e-15)
