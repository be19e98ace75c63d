"""Sum capacity of the two-antenna Gaussian broadcast channel under a covariance constraint.

The transmitter holds both relay inputs ``X = [X1, X2]`` with
``E[X X^T] <= K(rho)``; user k sees ``h_k^T X`` plus unit noise, with
``h1 = [1, a]`` and ``h2 = [b, 1]``.  Dirty-paper coding achieves the
sum capacity, so the optimum is found by searching DPC allocations.

The search saturates the constraint, ``B1 + B2 = K``, and writes
``B1 = K^{1/2} Q K^{1/2}`` with ``Q = R(theta) diag(q1, q2) R(theta)^T``,
``theta in [0, pi)`` and ``q1, q2 in [0, 1]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from diamond_bounds.core_model import (
    ZERO,
    ChannelConfig,
    InvalidInput,
    OptimizerOptions,
    Psd2,
    build_constraint,
    psd_sqrt,
    quadratic_form,
)

DEFAULT_OPTIONS = OptimizerOptions()
_LOG2E_HALF = 0.5 / math.log(2.0)


class EncodingOrder(enum.Enum):
    USER1_FIRST = "user1_first"
    USER2_FIRST = "user2_first"


@dataclass(frozen=True)
class DpcAllocation:
    """Input covariances of the two DPC layers.

    With ``USER2_FIRST`` user 2's codeword is encoded first and user 1 is
    dirty-paper coded against it, so user 1 sees no interference.
    """

    b1: Psd2
    b2: Psd2
    order: EncodingOrder


@dataclass(frozen=True)
class SumCapacityResult:
    bits: float
    best_allocation: DpcAllocation
    optimizer_gap_estimate: float


def dpc_sum_rate(alloc: DpcAllocation, cfg: ChannelConfig, constraint: Psd2 | None = None) -> float:
    """R1 + R2 of a DPC allocation, in bits.

    If ``constraint`` is given the allocation must satisfy ``b1 + b2 <= constraint``.
    """
    if constraint is not None and not (alloc.b1 + alloc.b2).dominated_by(constraint):
        raise InvalidInput("allocation violates the covariance constraint")
    (x1, y1), (x2, y2) = cfg.h1, cfg.h2
    g11 = max(quadratic_form(x1, y1, alloc.b1), 0.0)
    g21 = max(quadratic_form(x2, y2, alloc.b1), 0.0)
    g12 = max(quadratic_form(x1, y1, alloc.b2), 0.0)
    g22 = max(quadratic_form(x2, y2, alloc.b2), 0.0)
    if alloc.order is EncodingOrder.USER2_FIRST:
        return 0.5 * math.log2(1.0 + g11) + 0.5 * math.log2(1.0 + g22 / (1.0 + g21))
    return 0.5 * math.log2(1.0 + g22) + 0.5 * math.log2(1.0 + g11 / (1.0 + g12))


def coop_capacity(rho: float, cfg: ChannelConfig) -> float:
    """``1/2 log2 det(I + H K H^T)``: both receivers decoding jointly."""
    k = build_constraint(rho, cfg)
    tr = quadratic_form(*cfg.h1, k) + quadratic_form(*cfg.h2, k)
    det_h = 1.0 - cfg.a * cfg.b
    return 0.5 * math.log2(1.0 + tr + det_h * det_h * max(k.det, 0.0))


class _RateSurface:
    """DPC sum rate as a function of ``(theta, q1, q2)`` for one constraint."""

    def __init__(self, k: Psd2, cfg: ChannelConfig):
        s = psd_sqrt(k)
        # u_k = K^{1/2} h_k, so h_k^T B1 h_k = u_k^T Q u_k and h_k^T K h_k = |u_k|^2
        self.k = k
        self.s = s
        self.u1 = (s.m11 * cfg.h1[0] + s.m12 * cfg.h1[1], s.m12 * cfg.h1[0] + s.m22 * cfg.h1[1])
        self.u2 = (s.m11 * cfg.h2[0] + s.m12 * cfg.h2[1], s.m12 * cfg.h2[0] + s.m22 * cfg.h2[1])
        self.k1 = self.u1[0] ** 2 + self.u1[1] ** 2
        self.k2 = self.u2[0] ** 2 + self.u2[1] ** 2

    def gains(self, theta, q1, q2):
        c, sn = np.cos(theta), np.sin(theta)
        p1 = self.u1[0] * c + self.u1[1] * sn
        r1 = -self.u1[0] * sn + self.u1[1] * c
        p2 = self.u2[0] * c + self.u2[1] * sn
        r2 = -self.u2[0] * sn + self.u2[1] * c
        g1 = q1 * p1 * p1 + q2 * r1 * r1
        g2 = q1 * p2 * p2 + q2 * r2 * r2
        return g1, g2

    def grid(self, n_theta: int, n_q: int):
        theta = np.arange(n_theta) * (np.pi / n_theta)
        q = np.linspace(0.0, 1.0, n_q)
        g1, g2 = self.gains(theta[:, None, None], q[None, :, None], q[None, None, :])
        k1, k2 = self.k1, self.k2
        with np.errstate(divide="ignore", invalid="ignore"):
            user2_first = np.log1p(g1) + np.log1p(k2) - np.log1p(g2)
            user1_first = np.log1p(np.maximum(k2 - g2, 0.0)) + np.log1p(k1) - np.log1p(np.maximum(k1 - g1, 0.0))
        return theta, q, user2_first * _LOG2E_HALF, user1_first * _LOG2E_HALF

    def rate(self, order: EncodingOrder, theta: float, q1: float, q2: float) -> float:
        c, sn = math.cos(theta), math.sin(theta)
        (a1, b1), (a2, b2) = self.u1, self.u2
        p1, r1 = a1 * c + b1 * sn, b1 * c - a1 * sn
        p2, r2 = a2 * c + b2 * sn, b2 * c - a2 * sn
        g1 = q1 * p1 * p1 + q2 * r1 * r1
        g2 = q1 * p2 * p2 + q2 * r2 * r2
        if order is EncodingOrder.USER2_FIRST:
            nats = math.log1p(g1) + math.log1p(self.k2) - math.log1p(g2)
        else:
            nats = math.log1p(max(self.k2 - g2, 0.0)) + math.log1p(self.k1) - math.log1p(max(self.k1 - g1, 0.0))
        return nats * _LOG2E_HALF

    def allocation(self, order: EncodingOrder, theta: float, q1: float, q2: float) -> DpcAllocation:
        c, sn = math.cos(theta), math.sin(theta)
        q11 = c * c * q1 + sn * sn * q2
        q22 = sn * sn * q1 + c * c * q2
        q12 = c * sn * (q1 - q2)
        s = self.s
        # B1 = S Q S
        t11 = s.m11 * q11 + s.m12 * q12
        t12 = s.m11 * q12 + s.m12 * q22
        t21 = s.m12 * q11 + s.m22 * q12
        t22 = s.m12 * q12 + s.m22 * q22
        b1 = Psd2(
            max(t11 * s.m11 + t12 * s.m12, 0.0),
            t11 * s.m12 + t12 * s.m22,
            max(t21 * s.m12 + t22 * s.m22, 0.0),
        )
        k = self.k
        b2 = _clamped_psd(k.m11 - b1.m11, k.m12 - b1.m12, k.m22 - b1.m22)
        return DpcAllocation(b1, b2, order)


def _clamped_psd(m11: float, m12: float, m22: float) -> Psd2:
    m11, m22 = max(m11, 0.0), max(m22, 0.0)
    bound = math.sqrt(m11 * m22)
    return Psd2(m11, max(-bound, min(bound, m12)), m22)


def _coordinate_ascent(f, x: list[float], steps: list[float], opts: OptimizerOptions):
    best = f(*x)
    for _ in range(opts.max_iter):
        improved = False
        for i in range(3):
            for sign in (1.0, -1.0):
                cand = list(x)
                cand[i] += sign * steps[i]
                if i == 0:
                    cand[0] %= math.pi
                else:
                    cand[i] = min(1.0, max(0.0, cand[i]))
                v = f(*cand)
                if v > best:
                    best, x, improved = v, cand, True
                    break
            if improved:
                break
        if not improved:
            steps = [s * opts.shrink for s in steps]
            if max(steps) < opts.min_step:
                break
    return best, x


def _solve(rho: float, cfg: ChannelConfig, opts: OptimizerOptions) -> SumCapacityResult:
    k = build_constraint(rho, cfg)
    if k.trace == 0.0:
        return SumCapacityResult(0.0, DpcAllocation(ZERO, ZERO, EncodingOrder.USER2_FIRST), 0.0)
    surface = _RateSurface(k, cfg)
    theta, q, grid21, grid12 = surface.grid(opts.n_theta, opts.n_q)
    steps = [math.pi / opts.n_theta, 1.0 / (opts.n_q - 1), 1.0 / (opts.n_q - 1)]

    grid_best = -math.inf
    best = (-math.inf, None, None)
    for order, values in ((EncodingOrder.USER2_FIRST, grid21), (EncodingOrder.USER1_FIRST, grid12)):
        i, j, l = np.unravel_index(int(np.nanargmax(values)), values.shape)
        start = [float(theta[i]), float(q[j]), float(q[l])]
        grid_best = max(grid_best, float(values[i, j, l]))

        def f(t, q1, q2, order=order):
            return surface.rate(order, t, q1, q2)

        value, x = _coordinate_ascent(f, start, list(steps), opts)
        if value > best[0]:
            best = (value, order, x)

    value, order, x = best
    return SumCapacityResult(max(value, 0.0), surface.allocation(order, *x), max(value - grid_best, 0.0))


@lru_cache(maxsize=1 << 16)
def _cached(rho: float, a: float, b: float, p1: float, p2: float, opts: OptimizerOptions) -> SumCapacityResult:
    return _solve(rho, ChannelConfig(a, b, p1, p2, 0.0, 0.0), opts)


def sum_capacity(rho: float, cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> SumCapacityResult:
    """Maximum DPC sum rate subject to ``E[X X^T] <= K(rho)``.

    Results are memoized on ``(rho, a, b, P1, P2, opts)``; backhaul
    capacities do not enter this quantity.
    """
    return _cached(float(rho), cfg.a, cfg.b, cfg.p1, cfg.p2, opts)


def sum_capacity_bits(rho: float, cfg: ChannelConfig, opts: OptimizerOptions = DEFAULT_OPTIONS) -> float:
    return sum_capacity(rho, cfg, opts).bits
