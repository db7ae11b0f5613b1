"""Capacitance potentials, eigenmodes, gradients and gap blow-up studies.

The two unit-boundary-data potentials have the bispherical series

    V_j = sqrt(2) sqrt(cosh xi - cos theta)
          * sum_n (A_n^j e^{(n+1/2) xi} + B_n^j e^{-(n+1/2) xi}) P_n(cos theta)

with A_n^1 = 1/(1 - E_n), B_n^1 = -e^{(2n+1) xi2}/(1 - E_n),
A_n^2 = -e^{(2n+1) xi1}/(1 - E_n), B_n^2 = 1/(1 - E_n) and
E_n = e^{(2n+1)(xi1 + xi2)}. The coefficients overflow on their own, so
every term is evaluated in the combined, strictly-negative-exponent form

    j = 1:  (e^{-(n+1/2)(2 xi1 + xi)} - e^{-(n+1/2)(2 s - xi)}) / (1 - e^{-(2n+1) s})
    j = 2:  (e^{-(n+1/2)(2 xi2 - xi)} - e^{-(n+1/2)(2 s + xi)}) / (1 - e^{-(2n+1) s})

which stays bounded on the whole closed exterior strip -xi1 <= xi <= xi2.
Mode n is u_n = d_n V_1 + V_2 with the eigenvector ratio d_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacitance import DEFAULT_TERM_CAP, RescaledCapacitance, SigmaTerms
from .errors import TruncationCapError
from .geometry import BisphericalFrame, BisphericalPoint
from .spectra import SpectralPair

_SQRT2 = math.sqrt(2.0)
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PotentialSeries:
    """Truncated potential series for one geometry.

    The per-degree weights are stored as natural logs of their absolute
    values (signs: A^1 < 0 < B^1 and B^2 < 0 < A^2); evaluation never
    exponentiates them in isolation. n_max certifies the value tail
    below tol uniformly on the closed exterior strip, and the gradient
    tail below tol relative to the natural 1/alpha gradient scale.
    """

    frame: BisphericalFrame
    n_max: int
    tol: float
    tail_bound: float
    log_abs_a1: np.ndarray
    log_abs_b1: np.ndarray
    log_abs_a2: np.ndarray
    log_abs_b2: np.ndarray


@dataclass(frozen=True)
class ModeDecomposition:
    """Weights of the regular/singular split u_n = a_reg h1 + b_sing h2.

    h1 is the harmonic function with value 1 on both spheres (equal to
    V1 + V2), h2 the harmonic function with unit opposite fluxes
    (-1)^i through the two boundaries. residual is the worst relative
    defect of the 2x2 flux system at the returned weights.
    """

    a_reg: float
    b_sing: float
    residual: float


@dataclass(frozen=True)
class GradientStudyRow:
    """Gap-axis gradient maxima of both modes at one gap size."""

    epsilon: float
    max_grad_u1: float
    max_grad_u2: float
    location: BisphericalPoint


@dataclass(frozen=True)
class BlowupStudy:
    """Rows plus fitted log-log slopes and compensated products."""

    rows: list[GradientStudyRow]
    slope_u1: float
    slope_u2: float
    comp_u1_eps: list[float]
    comp_u1_eps_log: list[float]
    comp_u2_eps: list[float]
    comp_u2_eps_log: list[float]


def _tail_bounds(frame: BisphericalFrame, n_max: int) -> tuple[float, float]:
    """Certified value and (alpha-scaled) gradient tails beyond n_max.

    Uses |T_n| <= e^{-m a} / (1 - e^{-s}) with m = n + 1/2 and
    a = min(xi1, xi2), |P_n| <= 1, |dP_n/dtheta| <= n(n+1)/2 <= 2 m^2,
    and closed forms for sum m^k e^{-m a}.
    """
    a = min(frame.xi1, frame.xi2)
    s = frame.xi1 + frame.xi2
    xi_big = max(frame.xi1, frame.xi2)
    dmax = math.cosh(xi_big) + 1.0
    abar = -math.expm1(-a)
    m0 = n_max + 1.5
    e0 = math.exp(-m0 * a)
    sum_1 = e0 / abar
    sum_m = e0 * (m0 / abar + 1.0 / abar**2)
    sum_m2 = e0 * (m0 * m0 / abar + 2.0 * m0 / abar**2 + 2.0 / abar**3)
    denom = -math.expm1(-s)
    val = _SQRT2 * math.sqrt(dmax) / denom * sum_1
    # alpha * |grad tail|: sqrt-d prefactors and unit frame vectors folded
    # into one conservative constant
    c0 = 3.0 * _SQRT2 * math.sqrt(dmax) * math.cosh(xi_big)
    grad = c0 / denom * (sum_1 + 2.0 * sum_m + 2.0 * sum_m2)
    return val, grad


def potential_series(
    frame: BisphericalFrame, tol: float = 1e-10, cap: int = DEFAULT_TERM_CAP
) -> PotentialSeries:
    """Choose the truncation degree and tabulate the log-scale weights."""
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    a = min(frame.xi1, frame.xi2)
    n_max = 8
    for _ in range(200):
        val, grad = _tail_bounds(frame, n_max)
        worst = max(val, grad)
        if worst <= tol:
            break
        n_max += int(math.ceil(math.log(worst / tol) / a)) + 1
        if n_max > cap:
            raise TruncationCapError(
                f"potential series needs ~{n_max} terms for tol={tol:g}, cap is {cap}"
            )
    else:
        raise TruncationCapError("potential series truncation search did not settle")

    s = frame.xi1 + frame.xi2
    x = 2.0 * np.arange(n_max + 1, dtype=float) + 1.0
    log_den = x * s + np.log1p(-np.exp(-x * s))  # log(E_n - 1)
    return PotentialSeries(
        frame=frame,
        n_max=n_max,
        tol=tol,
        tail_bound=val,
        log_abs_a1=-log_den,
        log_abs_b1=x * frame.xi2 - log_den,
        log_abs_a2=x * frame.xi1 - log_den,
        log_abs_b2=-log_den,
    )


def _exponents(frame: BisphericalFrame, j: int, xi: np.ndarray):
    """Combined-term exponent bases (p, q) and the d/dxi sign for V_j."""
    s = frame.xi1 + frame.xi2
    if j == 1:
        return 2.0 * frame.xi1 + xi, 2.0 * s - xi, -1.0
    if j == 2:
        return 2.0 * frame.xi2 - xi, 2.0 * s + xi, 1.0
    raise ValueError(f"potential index must be 1 or 2, got {j}")


def _axis_series(
    frame: BisphericalFrame, n_max: int, xi: np.ndarray, j: int
) -> tuple[np.ndarray, np.ndarray]:
    """Series sums (S, dS/dxi) on the gap axis theta = pi, P_n(-1) = (-1)^n.

    No Legendre recurrence is needed, so the sum vectorizes over the
    degree as well as over the evaluation points.
    """
    s = frame.xi1 + frame.xi2
    p, q, sgn = _exponents(frame, j, xi)
    npts = xi.shape[0]
    out_s = np.zeros(npts)
    out_sx = np.zeros(npts)
    chunk = max(1024, (1 << 21) // max(npts, 1))
    for n0 in range(0, n_max + 1, chunk):
        n = np.arange(n0, min(n0 + chunk, n_max + 1), dtype=float)
        m = n + 0.5
        sign = np.where(n.astype(int) % 2 == 0, 1.0, -1.0)
        denom = -np.expm1(-(2.0 * n + 1.0) * s)
        ea = np.exp(-np.outer(m, p))
        eb = np.exp(-np.outer(m, q))
        t = (ea - eb) / denom[:, None]
        dt = (sgn * m)[:, None] * (ea + eb) / denom[:, None]
        out_s += sign @ t
        out_sx += sign @ dt
    return out_s, out_sx


def _strip_series(
    frame: BisphericalFrame,
    n_max: int,
    xi: np.ndarray,
    theta: np.ndarray,
    j: int,
    want_dxi: bool,
    want_dth: bool,
    chunk: int = 512,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """General-point series sums (S, dS/dxi, dS/dtheta).

    P_n(cos theta) and dP_n/dtheta advance by simultaneous three-term
    recurrences (the theta derivative has no 1/sin(theta) factor, so the
    axis is not a special case); the exponential factors are applied in
    vectorized blocks. The derivative recurrences only run when asked
    for.

    Chunk partial sums are combined with Kahan compensation: near the
    pole theta=0 the unscaled sum reaches ~1/(2*xi1) while the target
    accuracy is absolute, so naive accumulation over the ~n_max/chunk
    partials would cost ~n_max/chunk * eps_mach * sum and visibly
    exceeds 1e-10 once gaps shrink past 1e-7.
    """
    s = frame.xi1 + frame.xi2
    p, q, sgn = _exponents(frame, j, xi)
    x = np.cos(theta)
    msin = -np.sin(theta)  # d(cos theta)/dtheta
    npts = xi.shape[0]
    out_s = np.zeros(npts)
    out_sx = np.zeros(npts)
    out_st = np.zeros(npts)
    comp_s = np.zeros(npts)
    comp_sx = np.zeros(npts)
    comp_st = np.zeros(npts)

    def kadd(acc: np.ndarray, comp: np.ndarray, val: np.ndarray) -> None:
        y = val - comp
        tot = acc + y
        comp[:] = (tot - acc) - y
        acc[:] = tot

    p_prev = np.zeros(npts)
    p_cur = np.ones(npts)
    d_prev = np.zeros(npts)
    d_cur = np.zeros(npts)
    p_blk = np.empty((chunk, npts))
    d_blk = np.empty((chunk, npts)) if want_dth else None
    for n0 in range(0, n_max + 1, chunk):
        nb = min(n0 + chunk, n_max + 1) - n0
        for k in range(nb):
            n = n0 + k
            p_blk[k] = p_cur
            if want_dth:
                d_blk[k] = d_cur
                if n == 0:
                    d_prev, d_cur = d_cur, msin.copy()
                else:
                    d_prev, d_cur = (
                        d_cur,
                        ((2 * n + 1) * (msin * p_cur + x * d_cur) - n * d_prev)
                        / (n + 1),
                    )
            if n == 0:
                p_prev, p_cur = p_cur, x.copy()
            else:
                p_prev, p_cur = (
                    p_cur,
                    ((2 * n + 1) * x * p_cur - n * p_prev) / (n + 1),
                )
        n = np.arange(n0, n0 + nb, dtype=float)
        m = n + 0.5
        denom = -np.expm1(-(2.0 * n + 1.0) * s)
        ea = np.exp(-m[:, None] * p[None, :])
        eb = np.exp(-m[:, None] * q[None, :])
        t = (ea - eb) / denom[:, None]
        kadd(out_s, comp_s, (t * p_blk[:nb]).sum(axis=0))
        if want_dxi:
            dt = (sgn * m)[:, None] * (ea + eb) / denom[:, None]
            kadd(out_sx, comp_sx, (dt * p_blk[:nb]).sum(axis=0))
        if want_dth:
            kadd(out_st, comp_st, (t * d_blk[:nb]).sum(axis=0))
    return out_s, out_sx, out_st


def _series_sums(
    ps: PotentialSeries,
    xi: np.ndarray,
    theta: np.ndarray,
    j: int,
    want_grad: bool,
):
    on_axis = bool(np.all(np.abs(theta - math.pi) < 1e-12))
    if on_axis:
        s_val, s_xi = _axis_series(ps.frame, ps.n_max, xi, j)
        return s_val, s_xi, np.zeros_like(s_val)
    return _strip_series(
        ps.frame, ps.n_max, xi, theta, j, want_dxi=want_grad, want_dth=want_grad
    )


def _check_strip(frame: BisphericalFrame, xi: np.ndarray) -> None:
    slack = 1e-12 * max(1.0, frame.xi1, frame.xi2)
    if np.any(xi > frame.xi2 + slack):
        raise ValueError("point lies inside resonator 2 (xi > xi2)")
    if np.any(xi < -frame.xi1 - slack):
        raise ValueError("point lies inside resonator 1 (xi < -xi1)")


def _metric_d(xi, theta):
    """cosh(xi) - cos(theta), formed without cancellation.

    The direct difference loses most of its digits when xi and theta
    are both small (far-field points, or the theta=0 pole of a
    boundary whose xi_i shrinks with the gap); the half-angle form
    2*(sinh(xi/2)^2 + sin(theta/2)^2) is exact to roundoff everywhere.
    """
    return 2.0 * (np.square(np.sinh(0.5 * xi)) + np.square(np.sin(0.5 * theta)))


def _values(ps: PotentialSeries, xi, theta, j) -> np.ndarray:
    s_val, _, _ = _series_sums(ps, xi, theta, j, want_grad=False)
    d = _metric_d(xi, theta)
    return _SQRT2 * np.sqrt(d) * s_val


def _grads(ps: PotentialSeries, xi, theta, phi, j):
    """Cartesian gradient components of V_j at general strip points."""
    s_val, s_xi, s_th = _series_sums(ps, xi, theta, j, want_grad=True)
    return _assemble_grad(ps.frame, xi, theta, phi, s_val, s_xi, s_th)


def _assemble_grad(frame, xi, theta, phi, s_val, s_xi, s_th):
    ch, sh = np.cosh(xi), np.sinh(xi)
    ct, st = np.cos(theta), np.sin(theta)
    d = _metric_d(xi, theta)
    sqd = np.sqrt(d)
    f_xi = _SQRT2 * (0.5 * sh / sqd * s_val + sqd * s_xi)
    f_th = _SQRT2 * (0.5 * st / sqd * s_val + sqd * s_th)
    inv_alpha = 1.0 / frame.alpha
    cph, sph = np.cos(phi), np.sin(phi)
    radial = f_xi * (-st * sh) + f_th * (ct * ch - 1.0)
    gx = inv_alpha * radial * cph
    gy = inv_alpha * radial * sph
    gz = inv_alpha * (f_xi * (1.0 - ch * ct) + f_th * (-sh * st))
    return gx, gy, gz


def eval_potential(ps: PotentialSeries, j: int, p: BisphericalPoint) -> float:
    """V_j at a point of the closed exterior strip; interior points error."""
    xi = np.array([p.xi])
    _check_strip(ps.frame, xi)
    return float(_values(ps, xi, np.array([p.theta]), j)[0])


def eval_mode(n: int, sp: SpectralPair, ps: PotentialSeries, p: BisphericalPoint) -> float:
    """Eigenmode u_n = d_n V_1 + V_2 at a point of the closed strip."""
    d_n = _mode_ratio(n, sp)
    xi = np.array([p.xi])
    theta = np.array([p.theta])
    _check_strip(ps.frame, xi)
    return float(d_n * _values(ps, xi, theta, 1)[0] + _values(ps, xi, theta, 2)[0])


def eval_grad_potential(
    ps: PotentialSeries, j: int, p: BisphericalPoint
) -> np.ndarray:
    """Cartesian gradient of V_j, analytic term-by-term differentiation.

    Valid on the closed exterior strip, where the boundary value is the
    one-sided exterior limit; interior points are rejected.
    """
    xi = np.array([p.xi])
    theta = np.array([p.theta])
    phi = np.array([p.phi])
    _check_strip(ps.frame, xi)
    g = _grads(ps, xi, theta, phi, j)
    return np.array([float(c[0]) for c in g])


def eval_grad_mode(
    n: int, sp: SpectralPair, ps: PotentialSeries, p: BisphericalPoint
) -> np.ndarray:
    """Cartesian gradient of u_n, analytic term-by-term differentiation.

    Valid on the closed exterior strip, where the boundary value is the
    one-sided exterior limit; interior points are rejected.
    """
    d_n = _mode_ratio(n, sp)
    xi = np.array([p.xi])
    theta = np.array([p.theta])
    phi = np.array([p.phi])
    _check_strip(ps.frame, xi)
    g1 = _grads(ps, xi, theta, phi, 1)
    g2 = _grads(ps, xi, theta, phi, 2)
    return np.array([float(d_n * a[0] + b[0]) for a, b in zip(g1, g2)])


def _mode_ratio(n: int, sp: SpectralPair) -> float:
    if n == 1:
        return sp.d1
    if n == 2:
        return sp.d2
    raise ValueError(f"mode index must be 1 or 2, got {n}")


def _axis_grad_mag(ps: PotentialSeries, d_n: float, xi: np.ndarray) -> np.ndarray:
    """|grad u_n| on the gap axis; the gradient there is purely axial."""
    s1, s1x = _axis_series(ps.frame, ps.n_max, xi, 1)
    s2, s2x = _axis_series(ps.frame, ps.n_max, xi, 2)
    return _axis_mag_from_sums(ps.frame, d_n, xi, s1, s1x, s2, s2x)


def _axis_mag_from_sums(frame, d_n, xi, s1, s1x, s2, s2x):
    d = np.cosh(xi) + 1.0
    sqd = np.sqrt(d)
    s_val = d_n * s1 + s2
    s_xi = d_n * s1x + s2x
    f_xi = _SQRT2 * (0.5 * np.sinh(xi) / sqd * s_val + sqd * s_xi)
    return np.abs(f_xi) * d / frame.alpha


def max_gap_gradient(
    n: int, sp: SpectralPair, ps: PotentialSeries, samples: int = 400
) -> GradientStudyRow:
    """Maximise |grad u| over the gap segment (theta = pi, -xi1 <= xi <= xi2).

    Dense sampling followed by golden-section refinement around the best
    sample. Both modes are maximised in one pass since they share the
    series sums; the reported location is the maximiser of mode n.
    """
    if samples < 100:
        raise ValueError(f"need at least 100 samples, got {samples}")
    frame = ps.frame
    xis = np.linspace(-frame.xi1, frame.xi2, samples)
    s1, s1x = _axis_series(frame, ps.n_max, xis, 1)
    s2, s2x = _axis_series(frame, ps.n_max, xis, 2)

    results = {}
    for mode, d_n in ((1, sp.d1), (2, sp.d2)):
        g = _axis_mag_from_sums(frame, d_n, xis, s1, s1x, s2, s2x)
        i = int(np.argmax(g))
        lo = xis[max(i - 1, 0)]
        hi = xis[min(i + 1, samples - 1)]
        best_x, best_g = _golden_max(
            lambda t: float(_axis_grad_mag(ps, d_n, np.array([t]))[0]), lo, hi
        )
        if g[i] > best_g:
            best_x, best_g = float(xis[i]), float(g[i])
        results[mode] = (best_x, best_g)

    return GradientStudyRow(
        epsilon=frame.epsilon,
        max_grad_u1=results[1][1],
        max_grad_u2=results[2][1],
        location=BisphericalPoint(xi=results[n][0], theta=math.pi, phi=0.0),
    )


def _golden_max(f, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
        if b - a < 1e-14 * max(1.0, abs(a)):
            break
    return (c, fc) if fc > fd else (d, fd)


def h_decomposition(
    ct: RescaledCapacitance, sp: SpectralPair, st: SigmaTerms, n: int
) -> ModeDecomposition:
    """Solve for the regular/singular weights of mode n.

    Differentiating u_n = a_reg h1 + b_sing h2 and integrating the
    normal derivative over each boundary gives, after dividing row i by
    the volume of sphere i,

        a_reg s1 + b_sing / vol1 = (d_n - 1) ct11 + s1
        a_reg s2 - b_sing / vol2 = lambda_n

    with exact flux row sums s_i = ct_i1 + ct_i2. The singular profile
    h2 is normalized by its boundary fluxes: +1 out of sphere 1 and -1
    out of sphere 2 before any volume rescaling. The row sums equal the
    digamma sigma terms only to O(sqrt(eps)), so the sigma values are
    used as a positivity guard, not as system coefficients; solving with
    the exact sums is what makes the symmetric structural zeros
    (a_reg = 0 for mode 2, b_sing = 0 for mode 1) hold to rounding.
    """
    if st.sigma1 + st.sigma2 <= 0.0:
        raise ValueError("sigma terms must be positive; system would be singular")
    d_n = _mode_ratio(n, sp)
    lam = sp.lambda1 if n == 1 else sp.lambda2
    s1 = ct.ct11 + ct.ct12
    s2 = ct.ct21 + ct.ct22
    rhs1 = (d_n - 1.0) * ct.ct11 + s1
    rhs2 = lam
    det = s1 * (-1.0 / ct.vol2) - s2 * (1.0 / ct.vol1)
    if det == 0.0:
        raise ValueError("flux system is singular")
    a_reg = (rhs1 * (-1.0 / ct.vol2) - rhs2 * (1.0 / ct.vol1)) / det
    b_sing = (s1 * rhs2 - s2 * rhs1) / det
    r1 = a_reg * s1 + b_sing / ct.vol1 - rhs1
    r2 = a_reg * s2 - b_sing / ct.vol2 - rhs2
    scale = max(abs(rhs1), abs(rhs2), 1e-300)
    return ModeDecomposition(
        a_reg=a_reg, b_sing=b_sing, residual=max(abs(r1), abs(r2)) / scale
    )


def _surface_grad_max(
    ps: PotentialSeries, ratios: list[float], n_theta: int = 400
) -> list[float]:
    """Max |grad u| over both sphere surfaces, one value per mode ratio.

    |grad u|^2 is subharmonic in the exterior (sum of squares of
    harmonic functions), so the supremum over the whole exterior is
    attained on the spheres; sampling the surfaces therefore bounds the
    global maximum, not just a slice. Each mode is constant on each
    sphere, making the exterior-side gradient purely normal there, so
    only the xi-derivative of the series enters. The theta grid is
    log-clustered toward the gap, where the blow-up concentrates.
    """
    frame = ps.frame
    s = frame.xi1 + frame.xi2
    u_min = max(s * 1e-2, 1e-9)
    u = np.geomspace(u_min, math.pi, n_theta - 1)
    theta = np.append(math.pi - u, math.pi)
    maxima = [0.0] * len(ratios)
    for xi0 in (-frame.xi1, frame.xi2):
        xi = np.full_like(theta, xi0)
        s1, s1x, _ = _strip_series(
            frame, ps.n_max, xi, theta, 1, want_dxi=True, want_dth=False
        )
        s2, s2x, _ = _strip_series(
            frame, ps.n_max, xi, theta, 2, want_dxi=True, want_dth=False
        )
        d = _metric_d(xi0, theta)
        sqd = np.sqrt(d)
        sh = math.sinh(xi0)
        for k, d_n in enumerate(ratios):
            f_xi = _SQRT2 * (
                0.5 * sh / sqd * (d_n * s1 + s2) + sqd * (d_n * s1x + s2x)
            )
            g = np.abs(f_xi) * d / frame.alpha
            maxima[k] = max(maxima[k], float(np.max(g)))
    return maxima


def _blowup_cell(r1: float, r2: float, eps: float, samples: int, tol: float):
    from .capacitance import capacitance_exact, rescale
    from .geometry import ResonatorPair, frame_from_pair
    from .spectra import eigen

    pair = ResonatorPair(r1, r2, eps)
    frame = frame_from_pair(pair)
    sp = eigen(rescale(capacitance_exact(frame, tol=1e-12), pair))
    ps = potential_series(frame, tol=tol)
    axis = max_gap_gradient(2, sp, ps, samples=samples)
    surf1, surf2 = _surface_grad_max(ps, [sp.d1, sp.d2])
    return GradientStudyRow(
        epsilon=axis.epsilon,
        max_grad_u1=max(axis.max_grad_u1, surf1),
        max_grad_u2=max(axis.max_grad_u2, surf2),
        location=axis.location,
    )


def blowup_study(
    pair_family,
    material,
    eps_grid,
    *,
    samples: int = 400,
    tol: float = 1e-8,
    jobs: int = 1,
) -> BlowupStudy:
    """Gradient maxima across a gap sweep with fitted decay exponents.

    pair_family is a (r1, r2) tuple; each grid point builds the pair at
    that gap. The grid must span at least three decades so the log-log
    fit means something. Per gap, each mode's maximum combines the gap
    axis scan with a sweep over both sphere surfaces; |grad u|^2 is
    subharmonic outside the resonators, so the surface sweep bounds the
    supremum over the whole exterior. That matters for the mode whose
    boundary values coincide: its gap field stays bounded and the true
    maximum sits on the outer parts of the spheres, not in the gap.
    Returns the per-gap rows, the fitted slopes of log max|grad u_n|
    against log eps, and the compensated products max * eps and
    max * eps * |log eps| for both modes.

    material is accepted for interface uniformity but never read: the
    leading-order eigenmodes are purely electrostatic, so the gap
    gradients and their blow-up rates are material independent. Only
    the frequencies the modes ring at involve the contrast.
    """
    r1, r2 = pair_family
    eps_values = sorted(float(e) for e in eps_grid)
    if len(eps_values) < 3:
        raise ValueError("need at least three gap values for a fit")
    span = math.log10(eps_values[-1]) - math.log10(eps_values[0])
    if span < 3.0 - 1e-9:
        raise ValueError("gap grid must span at least three decades")

    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(
                ex.map(
                    _blowup_cell,
                    [r1] * len(eps_values),
                    [r2] * len(eps_values),
                    eps_values,
                    [samples] * len(eps_values),
                    [tol] * len(eps_values),
                )
            )
    else:
        rows = [_blowup_cell(r1, r2, e, samples, tol) for e in eps_values]

    log_eps = np.log(eps_values)
    slope1 = float(np.polyfit(log_eps, np.log([r.max_grad_u1 for r in rows]), 1)[0])
    slope2 = float(np.polyfit(log_eps, np.log([r.max_grad_u2 for r in rows]), 1)[0])
    return BlowupStudy(
        rows=rows,
        slope_u1=slope1,
        slope_u2=slope2,
        comp_u1_eps=[r.max_grad_u1 * r.epsilon for r in rows],
        comp_u1_eps_log=[
            r.max_grad_u1 * r.epsilon * abs(math.log(r.epsilon)) for r in rows
        ],
        comp_u2_eps=[r.max_grad_u2 * r.epsilon for r in rows],
        comp_u2_eps_log=[
            r.max_grad_u2 * r.epsilon * abs(math.log(r.epsilon)) for r in rows
        ],
    )
