"""Sum-capacity upper bounds for the two-user Gaussian multiple-access diamond channel."""

from diamond_bounds.core_model import (
    ChannelConfig,
    Interval,
    OptimizerOptions,
    Psd2,
    build_constraint,
    psd_sqrt,
    quadratic_form,
)
from diamond_bounds.closed_forms import f_a, f_b, f_c, interval_a_x, p2p_rate, rho_x
from diamond_bounds.mimo_bc import (
    DpcAllocation,
    EncodingOrder,
    SumCapacityResult,
    coop_capacity,
    dpc_sum_rate,
    sum_capacity,
)
from diamond_bounds.bounds import (
    BoundReport,
    bound_101,
    cutset_bound_102,
    max_sum_capacity,
    maximize_min,
    simple_cutset,
    theorem1_bound,
)

__all__ = [
    "BoundReport",
    "ChannelConfig",
    "DpcAllocation",
    "EncodingOrder",
    "Interval",
    "OptimizerOptions",
    "Psd2",
    "SumCapacityResult",
    "bound_101",
    "build_constraint",
    "coop_capacity",
    "cutset_bound_102",
    "dpc_sum_rate",
    "f_a",
    "f_b",
    "f_c",
    "interval_a_x",
    "max_sum_capacity",
    "maximize_min",
    "p2p_rate",
    "psd_sqrt",
    "quadratic_form",
    "rho_x",
    "simple_cutset",
    "sum_capacity",
    "theorem1_bound",
]
