import math

import pytest
from scipy.stats import qmc

from diamond_bounds import ChannelConfig, Interval, rho_x
from diamond_bounds.core_model import FULL_INTERVAL, InvalidInput
from diamond_bounds.oracle import grid_max_min, grid_sum_capacity, n3_admissible, n3_identity_residual


def test_grid_sum_capacity_zero_power():
    cfg = ChannelConfig(0.9, 0.9, 0.0, 0.0, 0.0, 0.0)
    assert grid_sum_capacity(0.4, cfg, (3, 3)) == 0.0
    assert grid_sum_capacity(0.4, cfg, (33, 17)) == 0.0


def test_grid_sum_capacity_decoupled():
    cfg = ChannelConfig(0.0, 0.0, 10.0, 10.0, 0.0, 0.0)
    assert grid_sum_capacity(0.0, cfg, (101, 51)) == pytest.approx(math.log2(11), abs=1e-3)


@pytest.mark.parametrize("rho", [-0.6, 0.0, 0.5, 0.95])
def test_grid_sum_capacity_refinement_nondecreasing(sym_channel, rho):
    # (99, 33) contains every point of (33, 17)
    assert grid_sum_capacity(rho, sym_channel, (99, 33)) >= grid_sum_capacity(rho, sym_channel, (33, 17)) - 1e-12


def test_grid_sum_capacity_resolution_check(sym_channel):
    with pytest.raises(InvalidInput):
        grid_sum_capacity(0.0, sym_channel, (2, 17))


def test_grid_max_min_examples():
    value, arg = grid_max_min([lambda r: 1 - r * r, lambda r: 1.0], FULL_INTERVAL, 20001)
    assert (value, arg) == (1.0, pytest.approx(0.0, abs=1e-12))
    assert grid_max_min([lambda r: 3.0], Interval(0.0, 0.0), 5) == (3.0, 0.0)
    assert grid_max_min([lambda r: -2.0], FULL_INTERVAL, 11)[0] == -2.0
    with pytest.raises(InvalidInput):
        grid_max_min([lambda r: r], FULL_INTERVAL, 2)


def test_n3_identity_examples():
    pos = ChannelConfig(0.9, 0.9, 10.0, 10.0, 0.0, 0.0)
    assert n3_identity_residual(0.5, pos) < 1e-10
    assert n3_identity_residual(rho_x(0.9, pos) - 1e-6, pos) < 1e-8
    neg = ChannelConfig(0.9, -0.9, 10.0, 10.0, 0.0, 0.0)
    assert n3_identity_residual(-0.5, neg) < 1e-10


def test_n3_identity_rejects_inadmissible():
    pos = ChannelConfig(0.9, 0.9, 10.0, 10.0, 0.0, 0.0)
    for rho in (0.0, -0.3, 0.99):
        with pytest.raises(InvalidInput):
            n3_identity_residual(rho, pos)
    with pytest.raises(InvalidInput):
        n3_identity_residual(0.3, ChannelConfig(0.9, 0.0, 10.0, 10.0, 0.0, 0.0))


def admissible_samples(n=100, seed=5):
    """Halton samples of (|b|, P1, P2, position inside the admissible rho range), alternating the sign of b."""
    pts = qmc.Halton(d=4, seed=seed).random(n)
    out = []
    for i, (u_b, u1, u2, u_r) in enumerate(pts):
        b = (0.05 + 3.0 * u_b) * (1 if i % 2 == 0 else -1)
        cfg = ChannelConfig(1.0, b, 0.05 + 30 * u1, 0.05 + 30 * u2, 0.0, 0.0)
        end = abs(rho_x(b, cfg))
        rho = math.copysign(max(u_r, 1e-3) * end, b)
        out.append((rho, cfg))
    return out


def test_n3_identity_on_quasi_random_samples():
    samples = admissible_samples()
    assert {s[1].b > 0 for s in samples} == {True, False}
    for rho, cfg in samples:
        assert n3_admissible(rho, cfg)
        assert n3_identity_residual(rho, cfg) < 1e-9
