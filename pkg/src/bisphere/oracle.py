"""Independent brute-force verifiers: image charges, flux quadrature, FD.

Nothing here shares math with the series modules. The image-charge
iteration is classical electrostatics on the axis; the flux quadrature
integrates the series' normal derivative over a sphere, which checks the
coefficients through a completely different identity; the finite
difference helpers certify analytic gradients and harmonicity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .capacitance import CapacitanceMatrix
from .errors import QuadratureConvergenceError
from .fields import _SQRT2, PotentialSeries, _strip_series
from .geometry import ResonatorPair

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class ImageChargeSystem:
    """Axis charges realizing unit potential on sphere j, zero on the other.

    Each entry is (x3 position, magnitude in the q/|x| potential
    convention, sphere index the charge sits inside). Successive
    magnitudes decay geometrically for any positive gap.
    """

    charges: list[tuple[float, float, int]]
    generations: int


def image_charge_system(
    pair: ResonatorPair, j: int, n_reflections: int = 200
) -> ImageChargeSystem:
    """Kelvin-image iteration for column j of the capacitance problem.

    Sphere 1 is centred at the origin, sphere 2 at L = r1 + r2 + eps on
    the x3 axis (the capacitance matrix does not care where the pair
    sits). The seed charge r_j at the centre of sphere j gives unit
    potential there; alternating reflections restore the zero condition
    on the other sphere. Reflection of charge q at z in the sphere
    (centre z_c, radius R) is q' = -q R / |z - z_c| placed at
    z_c + R^2 / (z - z_c). Stops early once the last magnitude falls
    below 1e-14 of the accumulated total.
    """
    if j not in (1, 2):
        raise ValueError(f"column index must be 1 or 2, got {j}")
    if n_reflections < 1:
        raise ValueError(f"need at least one reflection, got {n_reflections}")
    centers = {1: 0.0, 2: pair.r1 + pair.r2 + pair.epsilon}
    radii = {1: pair.r1, 2: pair.r2}

    home = j
    q = radii[j]
    z = centers[j]
    charges = [(z, q, home)]
    total = abs(q)
    generations = 0
    for _ in range(n_reflections):
        other = 3 - home
        zc, rad = centers[other], radii[other]
        dist = z - zc
        q = -q * rad / abs(dist)
        z = zc + rad * rad / dist
        home = other
        charges.append((z, q, home))
        total += abs(q)
        generations += 1
        if abs(q) < 1e-14 * total:
            break
    return ImageChargeSystem(charges=charges, generations=generations)


def image_charge_capacitance(
    pair: ResonatorPair, n_reflections: int = 200, *, warn_tol: float = 1e-12
) -> CapacitanceMatrix:
    """Capacitance matrix from two independent image-charge columns.

    C entry (i, j) is 4 pi times the total image charge inside sphere i
    for the column-j potential problem. Warns when the last reflection
    is still above warn_tol relative to the accumulated charge, which
    happens when the gap is too small for the requested reflection
    budget.
    """
    cols = {}
    worst_tail = 0.0
    for j in (1, 2):
        sys = image_charge_system(pair, j, n_reflections)
        on_1 = math.fsum(q for _, q, sph in sys.charges if sph == 1)
        on_2 = math.fsum(q for _, q, sph in sys.charges if sph == 2)
        tail = abs(sys.charges[-1][1])
        scale = abs(on_1) + abs(on_2)
        worst_tail = max(worst_tail, tail / scale)
        cols[j] = (on_1, on_2)
    if worst_tail > warn_tol:
        warnings.warn(
            f"image-charge tail {worst_tail:.2e} above {warn_tol:.0e}; "
            "increase n_reflections for this gap",
            stacklevel=2,
        )
    return CapacitanceMatrix(
        c11=_FOUR_PI * cols[1][0],
        c12=_FOUR_PI * cols[2][0],
        c21=_FOUR_PI * cols[1][1],
        c22=_FOUR_PI * cols[2][1],
        n_terms=n_reflections,
        tail_bound=worst_tail,
    )


def _boundary_flux(
    frame,
    i: int,
    dxi_profile,
    *,
    tol: float = 1e-8,
    max_nodes: int = 16384,
) -> float:
    """-integral of the outward normal derivative over sphere i.

    dxi_profile(theta array) must return the xi-derivative of the field
    on the boundary circle xi = xi_i. On the xi = const surface the
    element is alpha^2 sin(theta) / d^2 dtheta dphi and the outward
    normal derivative is -(d/alpha) d/dxi on sphere 2, +(d/alpha) d/dxi
    on sphere 1, so the signed flux reduces to a 1D theta integral.
    Gauss-Legendre order doubles until two estimates agree to 0.1 tol
    relative.
    """
    if i not in (1, 2):
        raise ValueError(f"sphere index must be 1 or 2, got {i}")
    xi0 = frame.xi2 if i == 2 else -frame.xi1
    sign = 1.0 if i == 2 else -1.0
    ch = math.cosh(xi0)

    prev = None
    nodes = 256
    while nodes <= max_nodes:
        t, w = np.polynomial.legendre.leggauss(nodes)
        theta = (t + 1.0) * (math.pi / 2.0)
        vals = dxi_profile(theta) * np.sin(theta) / (ch - np.cos(theta))
        est = (math.pi / 2.0) * float(w @ vals)
        if prev is not None and abs(est - prev) <= 0.1 * tol * max(abs(est), 1e-300):
            return sign * 2.0 * math.pi * frame.alpha * est
        prev = est
        nodes *= 2
    raise QuadratureConvergenceError(
        f"boundary flux did not converge by {max_nodes} nodes"
    )


def flux_quadrature(
    ps: PotentialSeries,
    j: int,
    i: int,
    *,
    tol: float = 1e-8,
    max_nodes: int = 16384,
) -> float:
    """C_ij recomputed as -flux of grad V_j out of sphere i."""
    frame = ps.frame
    xi0 = frame.xi2 if i == 2 else -frame.xi1

    def dxi_profile(theta: np.ndarray) -> np.ndarray:
        xi = np.full_like(theta, xi0)
        s_val, s_xi, _ = _strip_series(
            frame, ps.n_max, xi, theta, j, want_dxi=True, want_dth=False
        )
        # half-angle form of cosh(xi0) - cos(theta): no cancellation
        # for thin gaps where xi0 and the near-pole nodes are both small
        d = 2.0 * (math.sinh(0.5 * xi0) ** 2 + np.square(np.sin(0.5 * theta)))
        sqd = np.sqrt(d)
        return _SQRT2 * (0.5 * math.sinh(xi0) / sqd * s_val + sqd * s_xi)

    return _boundary_flux(frame, i, dxi_profile, tol=tol, max_nodes=max_nodes)


def fd_check_gradient(f, p, h: float, *, clearance: float | None = None) -> np.ndarray:
    """4th-order central-difference gradient of a scalar field at p.

    f takes a length-3 Cartesian array; the stencil reaches 2h along
    each axis, so when a boundary clearance is supplied it must exceed
    4h (factor-two safety on the reach).
    """
    if not h > 0.0:
        raise ValueError(f"step must be positive, got {h}")
    if clearance is not None and clearance < 4.0 * h:
        raise ValueError(
            f"stencil reach 2h = {2 * h:g} too close to the boundary "
            f"(clearance {clearance:g} < 4h)"
        )
    p = np.asarray(p, dtype=float)
    grad = np.empty(3)
    for ax in range(3):
        e = np.zeros(3)
        e[ax] = h
        grad[ax] = (
            -f(p + 2.0 * e) + 8.0 * f(p + e) - 8.0 * f(p - e) + f(p - 2.0 * e)
        ) / (12.0 * h)
    return grad


def fd_check_laplacian(f, p, h: float, *, clearance: float | None = None) -> float:
    """7-point second-order Laplacian estimate; vanishes on harmonics."""
    if not h > 0.0:
        raise ValueError(f"step must be positive, got {h}")
    if clearance is not None and clearance < 4.0 * h:
        raise ValueError(
            f"stencil reach h = {h:g} too close to the boundary "
            f"(clearance {clearance:g} < 4h)"
        )
    p = np.asarray(p, dtype=float)
    center = f(p)
    acc = 0.0
    for ax in range(3):
        e = np.zeros(3)
        e[ax] = h
        acc += f(p + e) - 2.0 * center + f(p - e)
    return acc / (h * h)
