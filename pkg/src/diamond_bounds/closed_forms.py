"""Closed-form cut terms of the diamond-channel bounds.

All functions return bits per channel use.  ``f_c`` is allowed to return
``-inf`` at ``|rho| = 1`` so that min/max compositions absorb it.
"""

from __future__ import annotations

import math

from diamond_bounds.core_model import ChannelConfig, Interval, InvalidInput, check_rho


def half_log2(x: float) -> float:
    return 0.5 * math.log2(x)


def f_a(rho: float, cfg: ChannelConfig) -> float:
    """Cut around relay 1: ``C1 + 1/2 log(1 + max(a^2, 1)(1 - rho^2) P2)``."""
    rho = check_rho(rho)
    return cfg.c1 + half_log2(1.0 + max(cfg.a * cfg.a, 1.0) * (1.0 - rho * rho) * cfg.p2)


def f_b(rho: float, cfg: ChannelConfig) -> float:
    rho = check_rho(rho)
    return cfg.c2 + half_log2(1.0 + max(cfg.b * cfg.b, 1.0) * (1.0 - rho * rho) * cfg.p1)


def f_c(rho: float, cfg: ChannelConfig) -> float:
    """Backhaul sum ``C1 + C2`` less the correlation penalty ``1/2 log 1/(1 - rho^2)``."""
    rho = check_rho(rho)
    u = 1.0 - rho * rho
    if u <= 0.0:
        return -math.inf
    return cfg.c1 + cfg.c2 + half_log2(u)


def rho_x(x: float, cfg: ChannelConfig) -> float:
    """Endpoint of the correlation range on which the averaged bound applies.

    Raises ``InvalidInput`` for ``x == 0`` or ``P1 P2 == 0``; callers that
    want the continuity limit use :func:`interval_a_x`.
    """
    if x == 0.0 or cfg.p1 * cfg.p2 == 0.0:
        raise InvalidInput("rho_x is undefined for x = 0 or P1 P2 = 0")
    r = 1.0 / (4.0 * x * x * cfg.p1 * cfg.p2)
    # sqrt(1 + r) - sqrt(r) rewritten to avoid cancellation when r is tiny
    value = 1.0 / (math.sqrt(1.0 + r) + math.sqrt(r))
    return math.copysign(value, x)


def interval_a_x(x: float, cfg: ChannelConfig) -> Interval:
    if x == 0.0 or cfg.p1 * cfg.p2 == 0.0:
        return Interval(0.0, 0.0)
    end = rho_x(x, cfg)
    return Interval(0.0, end) if x >= 0 else Interval(end, 0.0)


def p2p_rate(rho: float, cfg: ChannelConfig) -> float:
    """Single-user rate to destination 2 with full cooperation: ``1/2 log(b^2 P1 + P2 + 1 + 2 b rho sqrt(P1 P2))``."""
    rho = check_rho(rho)
    arg = cfg.b * cfg.b * cfg.p1 + cfg.p2 + 1.0 + 2.0 * cfg.b * rho * math.sqrt(cfg.p1 * cfg.p2)
    if arg < 1.0 - 1e-12:
        raise InvalidInput(f"log argument {arg} below 1")
    return half_log2(max(arg, 1.0))
