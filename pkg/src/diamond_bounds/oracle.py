"""Brute-force reference computations.

These are deliberately plain: exhaustive grids, no refinement, no caching,
and matrix algebra done through numpy rather than the closed-form 2x2
helpers used by the optimizers.  They exist to check the fast paths.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from diamond_bounds.core_model import ChannelConfig, Interval, InvalidInput


def _constraint_matrix(rho: float, cfg: ChannelConfig) -> np.ndarray:
    off = rho * math.sqrt(cfg.p1 * cfg.p2)
    return np.array([[cfg.p1, off], [off, cfg.p2]])


def grid_sum_capacity(rho: float, cfg: ChannelConfig, resolution: tuple[int, int] = (101, 51)) -> float:
    """Exhaustive DPC search over ``theta = i pi / n_theta`` and ``q1, q2 = j / (n_q - 1)``."""
    n_theta, n_q = resolution
    if n_theta < 3 or n_q < 3:
        raise InvalidInput("oracle resolution must be at least (3, 3)")
    k = _constraint_matrix(rho, cfg)
    w, v = np.linalg.eigh(k)
    root = v @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.T

    theta = np.arange(n_theta) * (np.pi / n_theta)
    q = np.linspace(0.0, 1.0, n_q)
    t, q1, q2 = np.meshgrid(theta, q, q, indexing="ij")
    c, s = np.cos(t), np.sin(t)
    # Q = R diag(q1, q2) R^T, stacked as (..., 2, 2)
    qm = np.empty(t.shape + (2, 2))
    qm[..., 0, 0] = c * c * q1 + s * s * q2
    qm[..., 1, 1] = s * s * q1 + c * c * q2
    qm[..., 0, 1] = qm[..., 1, 0] = c * s * (q1 - q2)
    b1 = root @ qm @ root
    b2 = k - b1

    h1 = np.array([1.0, cfg.a])
    h2 = np.array([cfg.b, 1.0])

    def quad(h, m):
        return np.clip(np.einsum("i,...ij,j->...", h, m, h), 0.0, None)

    user2_first = 0.5 * np.log2(1 + quad(h1, b1)) + 0.5 * np.log2(1 + quad(h2, b2) / (1 + quad(h2, b1)))
    user1_first = 0.5 * np.log2(1 + quad(h2, b2)) + 0.5 * np.log2(1 + quad(h1, b1) / (1 + quad(h1, b2)))
    return float(max(user2_first.max(), user1_first.max()))


def grid_max_min(fns: Sequence[Callable[[float], float]], domain: Interval, n: int = 20001) -> tuple[float, float]:
    if n < 3:
        raise InvalidInput("grid_max_min needs n >= 3")
    best, arg = -math.inf, domain.lo
    for x in np.linspace(domain.lo, domain.hi, n):
        value = min(f(float(x)) for f in fns)
        if value > best:
            best, arg = value, float(x)
    return best, arg


def n3_admissible(rho: float, cfg: ChannelConfig) -> bool:
    """Whether ``rho`` lies where the auxiliary noise variance N3 is non-negative."""
    b, p = cfg.b, cfg.p1 * cfg.p2
    if b == 0.0 or p == 0.0:
        return False
    r = 1.0 / (4.0 * b * b * p)
    end = math.sqrt(1.0 + r) - math.sqrt(r)
    return 0.0 < rho <= end if b > 0 else -end <= rho < 0.0


def n3_identity_residual(rho: float, cfg: ChannelConfig) -> float:
    """|(log-ratio with N3 substituted) - (-1/2 log 1/(1 - rho^2))| in bits.

    With ``N3 = b sqrt(P1 P2)(1/rho - rho) - 1`` the log-ratio collapses to
    the correlation penalty of the backhaul cut; this returns how far the
    floating-point evaluation is from that identity.
    """
    if not n3_admissible(rho, cfg):
        raise InvalidInput(f"rho={rho} outside the admissible set for b={cfg.b}")
    b, p1, p2 = cfg.b, cfg.p1, cfg.p2
    s = math.sqrt(p1 * p2)
    u = 1.0 - rho * rho
    n3 = b * s * (1.0 / rho - rho) - 1.0
    num = (u * b * b * p1 + 1.0 + n3) * (u * p2 + 1.0 + n3)
    den = (1.0 + n3) * (b * b * p1 + p2 + 2.0 * b * rho * s + 1.0 + n3)
    lhs = 0.5 * math.log2(num / den)
    rhs = -0.5 * math.log2(1.0 / u)
    return abs(lhs - rhs)
