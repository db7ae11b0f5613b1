"""Bispherical frame for two separated spheres and coordinate transforms.

Two spheres with radii r1, r2 and surface-to-surface gap eps sit on the
x3 axis. They are the level sets xi = -xi1 and xi = +xi2 of a
bispherical coordinate system (xi, theta, phi) whose limit points are
(0, 0, -alpha) and (0, 0, +alpha). The exterior of both spheres is the
strip -xi1 < xi < xi2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RegimeUnderflowError

REGION_INSIDE_D1 = "inside_D1"
REGION_INSIDE_D2 = "inside_D2"
REGION_EXTERIOR = "exterior"
REGION_BOUNDARY = "boundary"

# below this gap the frame scalars are computed in extended precision
_MP_EPS_THRESHOLD = 1e-8
_MP_DPS = 50

_TWO_PI = 2.0 * math.pi

# ln of the smallest positive normal double
_MIN_NORMAL_LOG = math.log(2.2250738585072014e-308)


@dataclass(frozen=True)
class ResonatorPair:
    """Radii and surface gap of the two spheres (gap > 0, not touching)."""

    r1: float
    r2: float
    epsilon: float

    def __post_init__(self) -> None:
        if not (self.r1 > 0.0 and self.r2 > 0.0):
            raise ValueError(f"radii must be positive, got r1={self.r1}, r2={self.r2}")
        if not self.epsilon > 0.0:
            raise ValueError(f"gap must be positive, got epsilon={self.epsilon}")

    @property
    def volume1(self) -> float:
        return 4.0 * math.pi * self.r1**3 / 3.0

    @property
    def volume2(self) -> float:
        return 4.0 * math.pi * self.r2**3 / 3.0


@dataclass(frozen=True)
class BisphericalFrame:
    """Derived frame scalars; sphere i satisfies r_i * sinh(xi_i) = alpha.

    c1 < -alpha < alpha < c2 are the center x3 coordinates. The original
    radii and gap are kept so downstream code never has to reconstruct
    the gap from the centers (which would cancel catastrophically).
    """

    alpha: float
    xi1: float
    xi2: float
    c1: float
    c2: float
    r1: float
    r2: float
    epsilon: float


@dataclass(frozen=True)
class BisphericalPoint:
    xi: float
    theta: float
    phi: float


@dataclass(frozen=True)
class CartesianPoint:
    x1: float
    x2: float
    x3: float


def frame_from_pair(pair: ResonatorPair) -> BisphericalFrame:
    """Build the bispherical frame with limit points at (0, 0, +-alpha).

    alpha = sqrt(eps(2 r1 + eps)(2 r2 + eps)(2 r1 + 2 r2 + eps)) / (2(r1 + r2 + eps))
    xi_i = asinh(alpha / r_i), centers at c_i = (-1)^i sqrt(r_i^2 + alpha^2).

    For very small gaps the scalars are evaluated in 50-digit arithmetic
    and rounded once, so the sweeps that reach eps = 1e-10 stay clean.
    """
    r1, r2, eps = pair.r1, pair.r2, pair.epsilon
    if eps < _MP_EPS_THRESHOLD:
        import mpmath

        with mpmath.workdps(_MP_DPS):
            mr1, mr2, meps = mpmath.mpf(r1), mpmath.mpf(r2), mpmath.mpf(eps)
            malpha = mpmath.sqrt(
                meps * (2 * mr1 + meps) * (2 * mr2 + meps) * (2 * mr1 + 2 * mr2 + meps)
            ) / (2 * (mr1 + mr2 + meps))
            alpha = float(malpha)
            xi1 = float(mpmath.asinh(malpha / mr1))
            xi2 = float(mpmath.asinh(malpha / mr2))
            c1 = -float(mpmath.sqrt(mr1 * mr1 + malpha * malpha))
            c2 = float(mpmath.sqrt(mr2 * mr2 + malpha * malpha))
    else:
        alpha = math.sqrt(
            eps * (2.0 * r1 + eps) * (2.0 * r2 + eps) * (2.0 * r1 + 2.0 * r2 + eps)
        ) / (2.0 * (r1 + r2 + eps))
        xi1 = math.asinh(alpha / r1)
        xi2 = math.asinh(alpha / r2)
        c1 = -math.hypot(r1, alpha)
        c2 = math.hypot(r2, alpha)
    return BisphericalFrame(
        alpha=alpha, xi1=xi1, xi2=xi2, c1=c1, c2=c2, r1=r1, r2=r2, epsilon=eps
    )


def to_cartesian(frame: BisphericalFrame, p: BisphericalPoint) -> CartesianPoint:
    """Map (xi, theta, phi) to Cartesian coordinates.

    x3 = alpha sinh(xi) / (cosh(xi) - cos(theta)), the transverse radius is
    alpha sin(theta) / (cosh(xi) - cos(theta)). The point xi = 0, theta = 0
    is the point at infinity and is rejected. The denominator is formed
    as 2*(sinh(xi/2)^2 + sin(theta/2)^2), which is the same quantity
    without the cancellation the direct difference suffers when both
    angles are small.
    """
    d = 2.0 * (math.sinh(0.5 * p.xi) ** 2 + math.sin(0.5 * p.theta) ** 2)
    if d == 0.0:
        raise ValueError("xi=0, theta=0 is the point at infinity")
    rho = frame.alpha * math.sin(p.theta) / d
    return CartesianPoint(
        x1=rho * math.cos(p.phi),
        x2=rho * math.sin(p.phi),
        x3=frame.alpha * math.sinh(p.xi) / d,
    )


def _as_cartesian(p) -> CartesianPoint:
    """Accept a CartesianPoint or any (x1, x2, x3) triple."""
    if isinstance(p, CartesianPoint):
        return p
    x1, x2, x3 = (float(v) for v in p)
    return CartesianPoint(x1=x1, x2=x2, x3=x3)


def to_bispherical(frame: BisphericalFrame, p) -> BisphericalPoint:
    """Invert the coordinate map in closed form.

    Uses the distances R1, R2 to the limit points (0, 0, -alpha) and
    (0, 0, +alpha):  xi = log(R1/R2)  and
    cos(theta) = (rho^2 + x3^2 - alpha^2) / (R1 R2).
    The limit points themselves have no preimage and are rejected.
    """
    p = _as_cartesian(p)
    al = frame.alpha
    rho2 = p.x1 * p.x1 + p.x2 * p.x2
    r1sq = rho2 + (p.x3 + al) ** 2
    r2sq = rho2 + (p.x3 - al) ** 2
    if r1sq == 0.0 or r2sq == 0.0:
        raise ValueError("limit points (0, 0, +-alpha) have no bispherical image")
    xi = 0.5 * (math.log(r1sq) - math.log(r2sq))
    c = (rho2 + p.x3 * p.x3 - al * al) / math.sqrt(r1sq * r2sq)
    theta = math.acos(min(1.0, max(-1.0, c)))
    phi = math.atan2(p.x2, p.x1) % _TWO_PI
    return BisphericalPoint(xi=xi, theta=theta, phi=phi)


def classify(frame: BisphericalFrame, p, rtol: float = 1e-12) -> str:
    """Locate a Cartesian point relative to the two spheres.

    Returns one of REGION_INSIDE_D1, REGION_INSIDE_D2, REGION_EXTERIOR,
    REGION_BOUNDARY; boundary means within rtol * r_i of sphere i.
    """
    p = _as_cartesian(p)
    rho2 = p.x1 * p.x1 + p.x2 * p.x2
    for center, radius, inside in (
        (frame.c1, frame.r1, REGION_INSIDE_D1),
        (frame.c2, frame.r2, REGION_INSIDE_D2),
    ):
        dist = math.sqrt(rho2 + (p.x3 - center) ** 2)
        if abs(dist - radius) <= rtol * radius:
            return REGION_BOUNDARY
        if dist < radius:
            return inside
    return REGION_EXTERIOR


def boundary_distance(frame: BisphericalFrame, p) -> float:
    """Signed distance to the nearest sphere surface (negative inside)."""
    p = _as_cartesian(p)
    rho2 = p.x1 * p.x1 + p.x2 * p.x2
    d1 = math.sqrt(rho2 + (p.x3 - frame.c1) ** 2) - frame.r1
    d2 = math.sqrt(rho2 + (p.x3 - frame.c2) ** 2) - frame.r2
    return min(d1, d2)


def log_epsilon_from_regime(delta: float, beta: float, c0: float) -> float:
    """Natural log of the regime gap c0 * exp(-1/delta^(1-beta)).

    This is the quantity to use once the gap itself underflows; it stays
    finite for any positive contrast.
    """
    _check_regime(delta, beta, c0)
    return math.log(c0) - delta ** (beta - 1.0)


def epsilon_from_regime(delta: float, beta: float, c0: float) -> float:
    """Gap size c0 * exp(-1/delta^(1-beta)) for a given contrast delta.

    Raises RegimeUnderflowError instead of silently returning 0.0 when
    the value drops below the smallest normal double; callers that only
    need asymptotics should switch to log_epsilon_from_regime.
    """
    log_eps = log_epsilon_from_regime(delta, beta, c0)
    if log_eps < _MIN_NORMAL_LOG:
        raise RegimeUnderflowError(
            f"epsilon = exp({log_eps:.1f}) underflows double precision; "
            "use log_epsilon_from_regime for asymptotic work"
        )
    return math.exp(log_eps)


def _check_regime(delta: float, beta: float, c0: float) -> None:
    if not 0.0 < delta < 1.0:
        raise ValueError(f"contrast delta must lie in (0, 1), got {delta}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"regime exponent beta must lie in (0, 1), got {beta}")
    if not c0 > 0.0:
        raise ValueError(f"regime scale c0 must be positive, got {c0}")
