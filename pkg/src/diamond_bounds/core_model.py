"""Channel configuration and exact 2x2 symmetric-matrix algebra.

Everything downstream works with real 2x2 covariances, so the matrix
helpers here are closed-form rather than calls into a general linear
algebra routine.  Rates everywhere in the package are in bits per channel
use (base-2 logarithms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

PSD_RTOL = 1e-12


class InvalidInput(ValueError):
    """Raised when a configuration or matrix violates its invariants."""


@dataclass(frozen=True)
class ChannelConfig:
    """Gains, power constraints and backhaul capacities of the diamond channel.

    The relay-to-destination hop is ``Y1 = X1 + a X2 + U1`` and
    ``Y2 = b X1 + X2 + U2`` with unit-variance noise.  ``c1`` and ``c2``
    are the source-to-relay link capacities in bits per channel use.
    """

    a: float
    b: float
    p1: float
    p2: float
    c1: float
    c2: float

    def __post_init__(self):
        for name in ("a", "b", "p1", "p2", "c1", "c2"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidInput(f"{name} must be a finite real, got {value!r}")
        for name in ("p1", "p2", "c1", "c2"):
            if getattr(self, name) < 0:
                raise InvalidInput(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def h1(self) -> tuple[float, float]:
        """Receive vector of destination 1."""
        return (1.0, self.a)

    @property
    def h2(self) -> tuple[float, float]:
        return (self.b, 1.0)

    def with_backhaul(self, c1: float, c2: float) -> ChannelConfig:
        return replace(self, c1=c1, c2=c2)

    def swapped(self) -> ChannelConfig:
        """Relabel relays and users: (a, b, P1, P2, C1, C2) -> (b, a, P2, P1, C2, C1)."""
        return ChannelConfig(self.b, self.a, self.p2, self.p1, self.c2, self.c1)

    def sign_flipped(self) -> ChannelConfig:
        """Channel seen when relay 2 negates its input: (a, b) -> (-a, -b)."""
        return replace(self, a=-self.a, b=-self.b)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (-1.0 <= self.lo <= self.hi <= 1.0):
            raise InvalidInput(f"invalid correlation interval [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, rho: float) -> bool:
        return self.lo <= rho <= self.hi


FULL_INTERVAL = Interval(-1.0, 1.0)


def check_rho(rho: float) -> float:
    if not (-1.0 <= rho <= 1.0):
        raise InvalidInput(f"correlation coefficient must lie in [-1, 1], got {rho}")
    return float(rho)


def psd_tol(m11: float, m22: float) -> float:
    return PSD_RTOL * max(1.0, abs(m11), abs(m22))


@dataclass(frozen=True)
class Psd2:
    """Symmetric positive-semidefinite 2x2 matrix ``[[m11, m12], [m12, m22]]``."""

    m11: float
    m12: float
    m22: float

    def __post_init__(self):
        tol = psd_tol(self.m11, self.m22)
        if not all(math.isfinite(v) for v in (self.m11, self.m12, self.m22)):
            raise InvalidInput(f"non-finite matrix entry in {self}")
        if self.m11 < -tol or self.m22 < -tol or self.det < -tol * max(1.0, self.trace):
            raise InvalidInput(f"matrix is not positive semidefinite: {self}")

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m12

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    def __add__(self, other: Psd2) -> Psd2:
        return Psd2(self.m11 + other.m11, self.m12 + other.m12, self.m22 + other.m22)

    def dominated_by(self, other: Psd2) -> bool:
        """True when ``other - self`` is PSD within tolerance (the order ``self <= other``)."""
        d11 = other.m11 - self.m11
        d12 = other.m12 - self.m12
        d22 = other.m22 - self.m22
        tol = psd_tol(other.m11, other.m22)
        return d11 >= -tol and d22 >= -tol and d11 * d22 - d12 * d12 >= -tol * max(1.0, other.trace)

    def to_array(self):
        import numpy as np

        return np.array([[self.m11, self.m12], [self.m12, self.m22]])


ZERO = Psd2(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs of the deterministic optimizers.

    ``tolerance`` is the accuracy target (bits) for the broadcast sum
    capacity; the coordinate-descent refinement stops once its step drops
    below ``tolerance * 1e-2``.
    """

    tolerance: float = 1e-4
    n_theta: int = 33
    n_q: int = 17
    max_iter: int = 200
    shrink: float = 0.5
    maxmin_points: int = 2001
    golden_xtol: float = 1e-9

    def __post_init__(self):
        if self.tolerance <= 0:
            raise InvalidInput("tolerance must be positive")
        if self.n_theta < 3 or self.n_q < 3 or self.maxmin_points < 3:
            raise InvalidInput("grid resolutions must be >= 3")
        if not 0 < self.shrink < 1:
            raise InvalidInput("shrink factor must lie in (0, 1)")

    @property
    def min_step(self) -> float:
        return self.tolerance * 1e-2


def build_constraint(rho: float, cfg: ChannelConfig) -> Psd2:
    """Covariance ceiling ``[[P1, rho sqrt(P1 P2)], [., P2]]``."""
    rho = check_rho(rho)
    return Psd2(cfg.p1, rho * math.sqrt(cfg.p1 * cfg.p2), cfg.p2)


def psd_sqrt(m: Psd2) -> Psd2:
    """Principal square root of a PSD 2x2 matrix.

    Uses the 2x2 identity ``sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M))``,
    which follows from the eigendecomposition and covers the rank-one case.
    """
    s = math.sqrt(max(m.det, 0.0))
    t2 = m.trace + 2.0 * s
    if t2 <= 0.0:
        return ZERO
    t = math.sqrt(t2)
    return Psd2((m.m11 + s) / t, m.m12 / t, (m.m22 + s) / t)


def quadratic_form(h1: float, h2: float, m: Psd2) -> float:
    return h1 * h1 * m.m11 + 2.0 * h1 * h2 * m.m12 + h2 * h2 * m.m22
