"""Upper bounds on the sum rate R1 + R2 of the Gaussian multiple-access diamond channel.

Three bounds are evaluated for one :class:`ChannelConfig`:

* the two-cut bound ``min{f_C(0), max_rho C_sum(rho)}`` (backhaul cut and
  broadcast cut only),
* the four-cut bound ``max_rho min{f_A, f_B, f_C(0), C_sum}``,
* the averaged bound, which adds ``(f_C(rho) + C_sum(rho)) / 2`` to the
  four-cut terms but only maximizes over the interval ``A_x`` for
  ``x = a`` and ``x = b``.

The reported ``theorem1`` value is the minimum of the four-cut bound and
both averaged bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from diamond_bounds.closed_forms import f_a, f_b, f_c, interval_a_x
from diamond_bounds.core_model import (
    FULL_INTERVAL,
    ChannelConfig,
    Interval,
    InvalidInput,
    OptimizerOptions,
)
from diamond_bounds.mimo_bc import DEFAULT_OPTIONS, sum_capacity_bits

ORDER_SLACK = 1e-9

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundReport:
    simple_cutset: float
    cutset_102: float
    bound_101_a: float
    bound_101_b: float
    theorem1: float
    argmax_rho_102: float
    argmax_rho_101_a: float
    argmax_rho_101_b: float

    def ordering_violation(self) -> float:
        """Largest amount by which ``theorem1 <= cutset_102 <= simple_cutset`` fails (0 if it holds)."""
        return max(0.0, self.theorem1 - self.cutset_102, self.cutset_102 - self.simple_cutset)


def _min_of(fns: Sequence[Callable[[float], float]], rho: float) -> float:
    return min(f(rho) for f in fns)


def _golden_max(g: Callable[[float], float], lo: float, hi: float, xtol: float) -> tuple[float, float]:
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    g1, g2 = g(x1), g(x2)
    while hi - lo > xtol:
        if g1 >= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - _INVPHI * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + _INVPHI * (hi - lo)
            g2 = g(x2)
    return (g1, x1) if g1 >= g2 else (g2, x2)


def maximize_min(
    fns: Sequence[Callable[[float], float]],
    domain: Interval = FULL_INTERVAL,
    opts: OptimizerOptions = DEFAULT_OPTIONS,
) -> tuple[float, float]:
    """Maximize ``rho -> min_i fns[i](rho)`` over ``domain``.

    A uniform grid of ``opts.maxmin_points`` points locates the best cell,
    then golden-section search refines inside the two neighbouring cells.
    Functions are evaluated in the given order and evaluation at a grid
    point stops as soon as the running minimum cannot beat the incumbent,
    so expensive terms should come last.

    Returns ``(value, argmax)``.
    """
    if not fns:
        raise InvalidInput("maximize_min needs at least one function")
    if domain.degenerate:
        return _min_of(fns, domain.lo), domain.lo

    xs = np.linspace(domain.lo, domain.hi, opts.maxmin_points)
    best, best_i = -math.inf, 0
    for i, x in enumerate(xs):
        running = math.inf
        for f in fns:
            running = min(running, f(float(x)))
            if running <= best:
                break
        if running > best:
            best, best_i = running, i
    if best == -math.inf:
        return best, float(xs[0])

    lo = float(xs[max(best_i - 1, 0)])
    hi = float(xs[min(best_i + 1, len(xs) - 1)])
    refined, x_ref = _golden_max(lambda r: _min_of(fns, r), lo, hi, opts.golden_xtol)
    if refined > best:
        return refined, x_ref
    return best, float(xs[best_i])


def bound_terms(cfg: ChannelConfig, opts: OptimizerOptions, averaged: bool):
    """Term list of the four-cut bound, plus the averaged term when ``averaged``; cheap terms first."""
    fc0 = f_c(0.0, cfg)

    def cmimo(r: float) -> float:
        return sum_capacity_bits(r, cfg, opts)

    fns = [lambda r: fc0, lambda r: f_a(r, cfg), lambda r: f_b(r, cfg), cmimo]
    if averaged:
        fns.append(lambda r: 0.5 * (f_c(r, cfg) + cmimo(r)))
    return fns


def max_sum_capacity(cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> tuple[float, float]:
    """``max_rho C_sum(rho)`` over [-1, 1] and its maximizer."""
    return maximize_min([lambda r: sum_capacity_bits(r, cfg, opts)], FULL_INTERVAL, opts)


def simple_cutset(cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> float:
    """Two-cut bound: backhaul sum versus the fully cooperative broadcast hop."""
    return min(f_c(0.0, cfg), max_sum_capacity(cfg, opts)[0])


def cutset_bound_102(cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> tuple[float, float]:
    """Four-cut bound ``max_rho min{f_A, f_B, f_C(0), C_sum}`` and its maximizing rho."""
    return maximize_min(bound_terms(cfg, opts, averaged=False), FULL_INTERVAL, opts)


def bound_101(
    x_selector: Literal["a", "b"], cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS
) -> tuple[float, float]:
    """Averaged bound maximized over ``A_a`` or ``A_b``."""
    if x_selector not in ("a", "b"):
        raise InvalidInput(f"x_selector must be 'a' or 'b', got {x_selector!r}")
    domain = interval_a_x(cfg.a if x_selector == "a" else cfg.b, cfg)
    return maximize_min(bound_terms(cfg, opts, averaged=True), domain, opts)


def theorem1_bound(cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> BoundReport:
    simple = simple_cutset(cfg, opts)
    c102, r102 = cutset_bound_102(cfg, opts)
    b_a, r_a = bound_101("a", cfg, opts)
    b_b, r_b = bound_101("b", cfg, opts)
    return BoundReport(
        simple_cutset=simple,
        cutset_102=c102,
        bound_101_a=b_a,
        bound_101_b=b_b,
        theorem1=min(c102, b_a, b_b),
        argmax_rho_102=r102,
        argmax_rho_101_a=r_a,
        argmax_rho_101_b=r_b,
    )
