import numpy as np
import pytest

from barrier_rhs.core import PhysicalConfig
from barrier_rhs.experiments import FREE_LIMIT_SEQUENCE, PacketConfig, free_limit_table, run_wavepacket


@pytest.fixture(scope="module")
def packet_result():
    cfg = PhysicalConfig(v0=2.0)
    return run_wavepacket(cfg, PacketConfig(energy=cfg.v0 / 2))


def test_wavepacket_matches_flux_weighted_transmission(packet_result):
    assert abs(packet_result.transmitted - packet_result.predicted) <= 0.05
    # frozen from the default run
    assert packet_result.transmitted == pytest.approx(0.215110, abs=1e-5)


def test_wavepacket_initial_snapshot(packet_result):
    assert packet_result.initial_error <= 1e-6
    assert packet_result.density.shape == (len(packet_result.times), len(packet_result.x))
    dx = packet_result.x[1] - packet_result.x[0]
    # total probability is conserved on the snapshot grid
    np.testing.assert_allclose(packet_result.density.sum(axis=1) * dx, 1.0, atol=1e-3)


def test_free_packet_is_fully_transmitted():
    res = run_wavepacket(PhysicalConfig(v0=0.0), PacketConfig(energy=1.0, n_snapshots=2))
    assert res.transmitted == pytest.approx(1.0, abs=1e-3)
    assert res.predicted == pytest.approx(1.0, abs=1e-6)


def test_free_limit_monotone():
    rows = free_limit_table(PhysicalConfig(), FREE_LIMIT_SEQUENCE)
    for name in ("max_t_defect", "max_r_left", "transform_distance"):
        col = [getattr(r, name) for r in rows]
        assert all(b < a for a, b in zip(col, col[1:])), name
        assert col[-1] <= 1e-3


def test_free_limit_small_and_zero():
    rows = free_limit_table(PhysicalConfig(), (1e-6, 0.0))
    assert rows[0].max_t_defect <= 1e-5
    assert rows[1].max_t_defect < 1e-14 and rows[1].max_r_left < 1e-14
    assert rows[1].transform_distance < 1e-12
