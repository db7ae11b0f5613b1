"""Special functions used by the series and the gap asymptotics.

Legendre polynomials and their derivatives, the digamma function, and
the partial-fraction tail sum(z / (n(n - z))) that links the digamma
function to the capacitance asymptotics.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

# Euler-Mascheroni constant, correct to double precision
GAMMA_EULER = 0.5772156649015329

# digamma asymptotic series in w = 1/z^2 (Bernoulli terms), valid z >= 10
_DIGAMMA_ASYMP = (1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0)

_TAIL_DIRECT_TERMS = 2000


def legendre_p(n: int, x: float) -> float:
    """P_n(x) by the three-term recurrence; requires |x| <= 1."""
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if abs(x) > 1.0:
        raise ValueError(f"argument must lie in [-1, 1], got {x}")
    if n == 0:
        return 1.0
    p_prev = 1.0
    p = x
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def legendre_p_deriv(n: int, x: float) -> float:
    """dP_n/dx via (1 - x^2) P_n' = n (P_{n-1} - x P_n).

    The endpoints use the limit value +-(+-1)^n n(n+1)/2 instead of the
    0/0 quotient.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if abs(x) > 1.0:
        raise ValueError(f"argument must lie in [-1, 1], got {x}")
    if n == 0:
        return 0.0
    if x == 1.0:
        return n * (n + 1) / 2.0
    if x == -1.0:
        return (-1.0) ** (n + 1) * n * (n + 1) / 2.0
    pn = legendre_p(n, x)
    pnm1 = legendre_p(n - 1, x)
    return n * (pnm1 - x * pn) / (1.0 - x * x)


def digamma(z: float) -> float:
    """Digamma function for real z > 0.

    Upward recurrence psi(z) = psi(z+1) - 1/z until z >= 10, then the
    standard asymptotic series. Absolute accuracy is well below 1e-12 on
    (0, 10].
    """
    if not z > 0.0:
        raise ValueError(f"digamma requires z > 0, got {z}")
    acc = 0.0
    while z < 10.0:
        acc -= 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    series = 0.0
    for coef in reversed(_DIGAMMA_ASYMP):
        series = w * (coef + series)
    return acc + math.log(z) - 0.5 / z - series


def digamma_series_tail(z: float) -> float:
    """sum_{n>=1} z / (n (n - z)) for 0 < z < 1, to ~1e-14 absolute.

    The first 2000 terms are summed directly (exact-compensated); the
    remainder is re-expanded as sum_{j>=2} z^(j-1) zeta(j, N+1), a
    geometrically convergent Hurwitz-zeta correction, so the quadratic
    term decay never forces ~1e13 direct terms.
    """
    if not 0.0 < z < 1.0:
        raise ValueError(f"tail sum requires z in (0, 1), got {z}")
    n = np.arange(1, _TAIL_DIRECT_TERMS + 1, dtype=float)
    direct = math.fsum(z / (n * (n - z)))
    tail = 0.0
    zp = z  # z^(j-1) for j = 2
    for j in range(2, 60):
        term = zp * float(_hurwitz_zeta(j, _TAIL_DIRECT_TERMS + 1))
        tail += term
        if term < 1e-17:
            break
        zp *= z
    return direct + tail
