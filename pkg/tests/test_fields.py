import math

import numpy as np
import pytest

from bisphere import (
    BisphericalPoint,
    CartesianPoint,
    Material,
    ResonatorPair,
    blowup_study,
    capacitance_exact,
    eigen,
    eval_grad_mode,
    eval_grad_potential,
    eval_mode,
    eval_potential,
    fd_check_gradient,
    flux_quadrature,
    frame_from_pair,
    h_decomposition,
    max_gap_gradient,
    potential_series,
    rescale,
    sigma_terms,
    to_bispherical,
    to_cartesian,
)
from bisphere.fields import _surface_grad_max


def _thetas(n=200):
    # open interval: theta = 0 and pi are the axis poles, handled separately
    return np.linspace(1e-4, math.pi - 1e-4, n)


def test_potential_series_metadata(series_12):
    assert series_12.n_max > 0
    assert series_12.tail_bound <= series_12.tol
    assert series_12.log_abs_a1.shape == (series_12.n_max + 1,)


def test_boundary_traces(frame_12, series_12):
    for theta in _thetas():
        on1 = BisphericalPoint(-frame_12.xi1, theta, 0.0)
        on2 = BisphericalPoint(frame_12.xi2, theta, 0.0)
        assert eval_potential(series_12, 1, on1) == pytest.approx(1.0, abs=1e-10)
        assert eval_potential(series_12, 1, on2) == pytest.approx(0.0, abs=1e-10)
        assert eval_potential(series_12, 2, on1) == pytest.approx(0.0, abs=1e-10)
        assert eval_potential(series_12, 2, on2) == pytest.approx(1.0, abs=1e-10)


def test_interior_point_rejected(frame_12, series_12):
    inside = BisphericalPoint(frame_12.xi2 + 0.05, 1.0, 0.0)
    with pytest.raises(ValueError, match="inside resonator 2"):
        eval_potential(series_12, 1, inside)
    inside1 = BisphericalPoint(-frame_12.xi1 - 0.05, 1.0, 0.0)
    with pytest.raises(ValueError, match="inside resonator 1"):
        eval_potential(series_12, 1, inside1)


def test_far_field_charge(frame_12, series_12, cap_12):
    # |x| V_j -> (C_1j + C_2j) / (4 pi); the dipole term decays one order
    # faster, so the relative defect at radius R shrinks like 1/R
    for j, qcol in ((1, cap_12.c11 + cap_12.c21), (2, cap_12.c12 + cap_12.c22)):
        want = qcol / (4.0 * math.pi)
        defects = []
        for radius in (100.0, 400.0):
            x = np.array([0.6, -0.3, 0.74])
            x *= radius / np.linalg.norm(x)
            b = to_bispherical(frame_12, CartesianPoint(*x))
            got = eval_potential(series_12, j, b) * radius
            defects.append(abs(got / want - 1.0))
            assert got == pytest.approx(want, rel=8.0 / radius)
        assert defects[1] < 0.5 * defects[0]


def test_potential_sum_between_zero_and_one(frame_12, series_12, rng):
    # V1 + V2 is harmonic, equals 1 on both spheres and 0 at infinity
    n_checked = 0
    for _ in range(200):
        x = rng.uniform(-4.0, 4.0, size=3)
        b = to_bispherical(frame_12, CartesianPoint(*x))
        if not (-frame_12.xi1 + 1e-6 < b.xi < frame_12.xi2 - 1e-6):
            continue
        tot = eval_potential(series_12, 1, b) + eval_potential(series_12, 2, b)
        assert 0.0 < tot < 1.0
        n_checked += 1
    assert n_checked > 100


def test_reflection_symmetry_equal_spheres(frame_sym, series_sym):
    # swapping the spheres mirrors xi, so V1(xi) = V2(-xi) when r1 = r2
    for theta in np.linspace(0.2, math.pi, 9):
        for xi in np.linspace(-frame_sym.xi1, frame_sym.xi2, 7):
            a = eval_potential(series_sym, 1, BisphericalPoint(xi, theta, 0.0))
            b = eval_potential(series_sym, 2, BisphericalPoint(-xi, theta, 0.0))
            assert a == pytest.approx(b, rel=1e-11, abs=1e-12)


def test_mode_boundary_values(frame_12, series_12, spectral_12):
    for theta in np.linspace(0.3, math.pi, 7):
        on1 = BisphericalPoint(-frame_12.xi1, theta, 0.0)
        on2 = BisphericalPoint(frame_12.xi2, theta, 0.0)
        assert eval_mode(2, spectral_12, series_12, on1) == pytest.approx(
            spectral_12.d2, rel=1e-9
        )
        assert eval_mode(2, spectral_12, series_12, on2) == pytest.approx(1.0, rel=1e-9)
        assert eval_mode(1, spectral_12, series_12, on1) == pytest.approx(
            spectral_12.d1, rel=1e-9
        )


def test_gradient_matches_finite_differences(frame_12, series_12, spectral_12, rng):
    def field(n):
        def f(x):
            return eval_mode(n, spectral_12, series_12, to_bispherical(frame_12, x))

        return f

    checked = 0
    for _ in range(60):
        x = rng.uniform(-3.0, 3.0, size=3)
        b = to_bispherical(frame_12, CartesianPoint(*x))
        if not (-frame_12.xi1 + 0.03 < b.xi < frame_12.xi2 - 0.03):
            continue
        for n in (1, 2):
            ana = eval_grad_mode(n, spectral_12, series_12, b)
            num = fd_check_gradient(field(n), x, 1e-3)
            assert np.allclose(ana, num, rtol=1e-6, atol=1e-9)
        checked += 1
        if checked >= 12:
            break
    assert checked >= 12


def test_potential_gradient_matches_fd_and_mode_combination(
    frame_12, series_12, spectral_12
):
    for x in ([2.5, 0.5, -1.0], [-1.4, 0.2, -0.7], [0.1, 2.2, 0.9]):
        b = to_bispherical(frame_12, CartesianPoint(*x))

        for j in (1, 2):
            def f(y, j=j):
                return eval_potential(series_12, j, to_bispherical(frame_12, y))

            ana = eval_grad_potential(series_12, j, b)
            num = fd_check_gradient(f, np.asarray(x), 1e-3)
            assert np.allclose(ana, num, rtol=1e-6, atol=1e-9)

        # modes are the combinations d_n grad V1 + grad V2
        g1 = eval_grad_potential(series_12, 1, b)
        g2 = eval_grad_potential(series_12, 2, b)
        for n, d_n in ((1, spectral_12.d1), (2, spectral_12.d2)):
            gm = eval_grad_mode(n, spectral_12, series_12, b)
            assert np.allclose(gm, d_n * g1 + g2, rtol=1e-12, atol=1e-14)


def test_potential_gradient_rejects_interior_points(frame_12, series_12):
    with pytest.raises(ValueError, match="inside resonator"):
        eval_grad_potential(
            series_12, 1, to_bispherical(frame_12, CartesianPoint(0.0, 0.0, -1.0))
        )


def test_gradient_has_no_azimuthal_component(frame_12, series_12, spectral_12):
    # the fields are axisymmetric; e_phi projection must vanish
    for x in ([0.7, 1.1, 0.4], [-1.2, 0.5, -0.9], [0.3, -2.0, 1.4]):
        b = to_bispherical(frame_12, CartesianPoint(*x))
        g = eval_grad_mode(2, spectral_12, series_12, b)
        phi = math.atan2(x[1], x[0])
        e_phi = np.array([-math.sin(phi), math.cos(phi), 0.0])
        assert abs(g @ e_phi) < 1e-10 * (1.0 + np.linalg.norm(g))


def test_symmetric_in_phase_mode_is_flat_at_gap_center(frame_sym, series_sym, spectral_sym):
    # equal boundary data shields the gap: the in-phase gradient vanishes
    # at the center by symmetry
    g = eval_grad_mode(1, spectral_sym, series_sym, BisphericalPoint(0.0, math.pi, 0.0))
    assert np.linalg.norm(g) < 1e-8


def test_anti_phase_gap_gradient_magnitude(frame_sym, series_sym, spectral_sym, pair_sym):
    # across a short gap the anti-phase mode drops from d2 to 1 over eps
    g = eval_grad_mode(2, spectral_sym, series_sym, BisphericalPoint(0.0, math.pi, 0.0))
    quotient = (1.0 - spectral_sym.d2) / pair_sym.epsilon
    assert np.linalg.norm(g) == pytest.approx(abs(quotient), rel=0.3)
    # and it points along the axis
    assert abs(g[0]) < 1e-10 and abs(g[1]) < 1e-10


def test_h_decomposition_symmetric_structure(pair_sym, frame_sym):
    ct = rescale(capacitance_exact(frame_sym, tol=1e-13), pair_sym)
    sp = eigen(ct)
    st_ = sigma_terms(frame_sym, pair_sym)
    dec1 = h_decomposition(ct, sp, st_, 1)
    dec2 = h_decomposition(ct, sp, st_, 2)
    # in-phase mode is exactly the regular profile, anti-phase exactly the
    # singular one
    assert dec1.a_reg == pytest.approx(1.0, rel=1e-12)
    assert abs(dec1.b_sing) < 1e-10
    assert abs(dec2.a_reg) < 1e-10
    assert dec2.b_sing != 0.0
    assert dec1.residual < 1e-12 and dec2.residual < 1e-12


def _mode_minus_combination(frame, series, sp, dec, h2_fn, n, points):
    out = []
    for b in points:
        u = eval_mode(n, sp, series, b)
        h1 = eval_potential(series, 1, b) + eval_potential(series, 2, b)
        out.append(u - dec.a_reg * h1 - dec.b_sing * h2_fn(b))
    return np.array(out)


def test_h_decomposition_reconstructs_modes_pointwise(
    pair_12, frame_12, series_12, spectral_12, cap_12, rng
):
    ct = rescale(cap_12, pair_12)
    st_ = sigma_terms(frame_12, pair_12)
    dec1 = h_decomposition(ct, spectral_12, st_, 1)
    dec2 = h_decomposition(ct, spectral_12, st_, 2)

    # recover the singular profile from mode 2, then check mode 1 against it
    def h2_from_mode2(b):
        u = eval_mode(2, spectral_12, series_12, b)
        h1 = eval_potential(series_12, 1, b) + eval_potential(series_12, 2, b)
        return (u - dec2.a_reg * h1) / dec2.b_sing

    points = []
    while len(points) < 100:
        x = rng.uniform(-3.5, 3.5, size=3)
        b = to_bispherical(frame_12, CartesianPoint(*x))
        if -frame_12.xi1 + 1e-9 < b.xi < frame_12.xi2 - 1e-9:
            points.append(b)

    resid = _mode_minus_combination(
        frame_12, series_12, spectral_12, dec1, h2_from_mode2, 1, points
    )
    scale = max(1.0, abs(spectral_12.d1))
    assert np.max(np.abs(resid)) < 1e-8 * scale


def test_h_decomposition_flux_normalization(
    pair_12, frame_12, series_12, spectral_12, cap_12
):
    # the singular profile carries flux +1 out of sphere 1 and -1 out of
    # sphere 2; recover it by linearity from the mode fluxes
    ct = rescale(cap_12, pair_12)
    st_ = sigma_terms(frame_12, pair_12)
    dec2 = h_decomposition(ct, spectral_12, st_, 2)
    for i, want in ((1, 1.0), (2, -1.0)):
        flux_v1 = flux_quadrature(series_12, 1, i, tol=1e-9)
        flux_v2 = flux_quadrature(series_12, 2, i, tol=1e-9)
        flux_u2 = spectral_12.d2 * flux_v1 + flux_v2
        flux_h1 = flux_v1 + flux_v2
        got = (flux_u2 - dec2.a_reg * flux_h1) / dec2.b_sing
        assert got == pytest.approx(want, abs=1e-4)


def test_h_decomposition_rejects_bad_mode_index(pair_12, frame_12, cap_12, spectral_12):
    ct = rescale(cap_12, pair_12)
    st_ = sigma_terms(frame_12, pair_12)
    with pytest.raises(ValueError):
        h_decomposition(ct, spectral_12, st_, 3)


def test_max_gap_gradient_anti_phase_plateau():
    # small gap so the axis profile is flat to O(xi1^2); at eps = 0.1 the
    # endpoints already sit a few percent above the center
    eps = 1e-3
    pair = ResonatorPair(1.0, 1.0, eps)
    frame = frame_from_pair(pair)
    sp = eigen(rescale(capacitance_exact(frame, tol=1e-13), pair))
    ps = potential_series(frame, tol=1e-10)
    row = max_gap_gradient(2, sp, ps, samples=200)
    # the maximizer lies on the gap segment
    assert -frame.xi1 - 1e-12 <= row.location.xi <= frame.xi2 + 1e-12
    assert row.location.theta == pytest.approx(math.pi)
    # center value within a tenth of a percent of the maximum
    g_center = np.linalg.norm(
        eval_grad_mode(2, sp, ps, BisphericalPoint(0.0, math.pi, 0.0))
    )
    assert g_center >= 0.999 * row.max_grad_u2
    assert row.max_grad_u2 >= g_center * (1.0 - 1e-12)


def test_max_gap_gradient_profile_is_even_for_equal_spheres(
    frame_sym, series_sym, spectral_sym
):
    for xi in (0.05, 0.12, 0.2):
        gp = np.linalg.norm(
            eval_grad_mode(2, spectral_sym, series_sym, BisphericalPoint(xi, math.pi, 0.0))
        )
        gm = np.linalg.norm(
            eval_grad_mode(2, spectral_sym, series_sym, BisphericalPoint(-xi, math.pi, 0.0))
        )
        assert gp == pytest.approx(gm, rel=1e-9)


def test_max_gap_gradient_needs_enough_samples(spectral_12, series_12):
    with pytest.raises(ValueError):
        max_gap_gradient(2, spectral_12, series_12, samples=10)


def test_surface_sweep_consistent_with_axis_endpoint(
    frame_sym, series_sym, spectral_sym
):
    # theta = pi on a sphere surface is the gap endpoint of the axis, so the
    # surface maximum of the anti-phase mode cannot fall below it
    g_end = np.linalg.norm(
        eval_grad_mode(
            2, spectral_sym, series_sym, BisphericalPoint(frame_sym.xi2, math.pi, 0.0)
        )
    )
    maxima = _surface_grad_max(series_sym, [spectral_sym.d1, spectral_sym.d2])
    assert maxima[1] >= g_end * (1.0 - 1e-9)
    assert maxima[1] == pytest.approx(g_end, rel=0.05)
    # the in-phase surface maximum is order one, nowhere near the 1/eps scale
    assert maxima[0] < 0.05 * maxima[1]


def test_blowup_study_grid_validation(water_air):
    with pytest.raises(ValueError):
        blowup_study((1.0, 1.0), water_air, [1e-3, 1e-2], samples=100)
    with pytest.raises(ValueError):
        # three points but under three decades of span
        blowup_study((1.0, 1.0), water_air, [1e-3, 3e-3, 1e-2], samples=100)


def test_blowup_study_parallel_matches_serial(water_air):
    grid = [1e-4, 1e-3, 1e-2, 1e-1]
    a = blowup_study((1.0, 2.0), water_air, grid, samples=120, tol=1e-7, jobs=1)
    b = blowup_study((1.0, 2.0), water_air, grid, samples=120, tol=1e-7, jobs=2)
    assert a.slope_u1 == b.slope_u1
    assert a.slope_u2 == b.slope_u2
    for ra, rb in zip(a.rows, b.rows):
        assert ra.max_grad_u1 == rb.max_grad_u1
        assert ra.max_grad_u2 == rb.max_grad_u2
