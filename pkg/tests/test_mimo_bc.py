import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamond_bounds import (
    ChannelConfig,
    DpcAllocation,
    EncodingOrder,
    Psd2,
    build_constraint,
    coop_capacity,
    dpc_sum_rate,
    p2p_rate,
    quadratic_form,
    sum_capacity,
)
from diamond_bounds.core_model import ZERO, InvalidInput
from diamond_bounds.oracle import grid_sum_capacity

TOL = 1e-4

configs = st.builds(
    ChannelConfig,
    a=st.floats(-2, 2),
    b=st.floats(-2, 2),
    p1=st.floats(0, 20),
    p2=st.floats(0, 20),
    c1=st.just(0.0),
    c2=st.just(0.0),
)
rhos = st.floats(-1, 1)


def half_log2(x):
    return 0.5 * math.log2(x)


def test_single_user_allocation(sym_channel):
    k = build_constraint(0.3, sym_channel)
    rate = dpc_sum_rate(DpcAllocation(k, ZERO, EncodingOrder.USER2_FIRST), sym_channel, k)
    assert rate == pytest.approx(half_log2(1 + quadratic_form(*sym_channel.h1, k)))


def test_zero_allocation(sym_channel):
    for order in EncodingOrder:
        assert dpc_sum_rate(DpcAllocation(ZERO, ZERO, order), sym_channel) == 0.0


@pytest.mark.parametrize("order", list(EncodingOrder))
def test_decoupled_parallel_channels(order):
    cfg = ChannelConfig(0.0, 0.0, 10.0, 4.0, 0.0, 0.0)
    alloc = DpcAllocation(Psd2(10.0, 0.0, 0.0), Psd2(0.0, 0.0, 4.0), order)
    assert dpc_sum_rate(alloc, cfg, build_constraint(0.0, cfg)) == pytest.approx(half_log2(11) + half_log2(5))


def test_dpc_rejects_infeasible_allocation(sym_channel):
    k = build_constraint(0.0, sym_channel)
    with pytest.raises(InvalidInput):
        dpc_sum_rate(DpcAllocation(k, Psd2(1.0, 0.0, 0.0), EncodingOrder.USER1_FIRST), sym_channel, k)


def test_sum_capacity_zero_power():
    cfg = ChannelConfig(0.9, 0.9, 0.0, 0.0, 0.0, 0.0)
    for rho in (-1.0, 0.0, 0.7):
        assert sum_capacity(rho, cfg).bits == 0.0


def test_sum_capacity_decoupled():
    cfg = ChannelConfig(0.0, 0.0, 10.0, 10.0, 0.0, 0.0)
    assert sum_capacity(0.0, cfg).bits == pytest.approx(3.45943161863729726, abs=TOL)
    assert grid_sum_capacity(0.0, cfg, (101, 51)) == pytest.approx(3.45943161863729726, abs=1e-3)


def test_sum_capacity_matches_grid_oracle_value(sym_channel):
    # oracle.grid_sum_capacity(0.5, sym_channel, (101, 51)) evaluated before the optimizer was written
    assert sum_capacity(0.5, sym_channel).bits == pytest.approx(2.629168995144304, abs=5e-3)
    assert sum_capacity(0.5, sym_channel).bits >= 2.629168995144304 - 1e-12


def test_result_allocation_is_feasible_and_consistent(sym_channel):
    for rho in (-0.8, 0.0, 0.5, 1.0):
        res = sum_capacity(rho, sym_channel)
        k = build_constraint(rho, sym_channel)
        alloc = res.best_allocation
        assert (alloc.b1 + alloc.b2).dominated_by(k)
        assert dpc_sum_rate(alloc, sym_channel, k) == pytest.approx(res.bits, abs=1e-9)
        assert res.optimizer_gap_estimate >= 0.0


def test_coop_capacity_examples(sym_channel):
    assert coop_capacity(0.4, ChannelConfig(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)) == 0.0
    assert coop_capacity(0.0, ChannelConfig(0.0, 0.0, 10.0, 3.0, 0.0, 0.0)) == pytest.approx(half_log2(11 * 4))
    # det(I + H diag(10, 10) H^T) evaluated with mpmath
    assert coop_capacity(0.0, sym_channel) == pytest.approx(2.67542540274168791, rel=1e-13)


def test_coop_capacity_matches_numpy_determinant():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b = rng.uniform(-3, 3, 2)
        p1, p2 = rng.uniform(0, 30, 2)
        rho = rng.uniform(-1, 1)
        cfg = ChannelConfig(a, b, p1, p2, 0.0, 0.0)
        h = np.array([[1.0, a], [b, 1.0]])
        k = build_constraint(rho, cfg).to_array()
        expected = 0.5 * np.log2(np.linalg.det(np.eye(2) + h @ k @ h.T))
        assert coop_capacity(rho, cfg) == pytest.approx(expected, rel=1e-10, abs=1e-12)


@given(rhos, configs)
def test_below_cooperative_capacity(rho, cfg):
    assert sum_capacity(rho, cfg).bits <= coop_capacity(rho, cfg) + 1e-9


@given(rhos, configs)
def test_above_single_user_rates(rho, cfg):
    k = build_constraint(rho, cfg)
    c = sum_capacity(rho, cfg).bits
    assert c >= half_log2(1 + quadratic_form(*cfg.h1, k)) - TOL
    assert c >= half_log2(1 + quadratic_form(*cfg.h2, k)) - TOL
    assert c >= p2p_rate(rho, cfg) - TOL


@given(rhos, configs)
def test_p2p_rate_is_user2_single_user_rate(rho, cfg):
    k = build_constraint(rho, cfg)
    assert p2p_rate(rho, cfg) == pytest.approx(half_log2(1 + quadratic_form(*cfg.h2, k)), abs=1e-12)


@given(rhos, configs)
def test_relabeling_symmetry(rho, cfg):
    assert sum_capacity(rho, cfg.swapped()).bits == pytest.approx(sum_capacity(rho, cfg).bits, abs=2 * TOL)


@given(rhos, configs)
def test_sign_symmetry(rho, cfg):
    assert sum_capacity(-rho, cfg.sign_flipped()).bits == pytest.approx(sum_capacity(rho, cfg).bits, abs=2 * TOL)


def test_matches_grid_oracle_on_random_configs():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a, b = rng.uniform(-2, 2, 2)
        p1, p2 = rng.uniform(0, 20, 2)
        rho = rng.uniform(-0.99, 0.99)
        cfg = ChannelConfig(a, b, p1, p2, 0.0, 0.0)
        fast = sum_capacity(rho, cfg).bits
        ref = grid_sum_capacity(rho, cfg, (101, 51))
        assert abs(fast - ref) <= 5e-3
        assert fast >= ref - 1e-9  # refinement starts from a grid point, it can only go up


def test_tighter_tolerance_does_not_lower_value(sym_channel):
    from diamond_bounds import OptimizerOptions

    loose = sum_capacity(0.3, sym_channel).bits
    tight = sum_capacity(0.3, sym_channel, OptimizerOptions(tolerance=1e-7)).bits
    assert tight >= loose - 1e-9
    assert tight - loose < TOL
