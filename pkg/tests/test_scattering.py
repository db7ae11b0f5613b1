import math

import numpy as np
import pytest

from bisphere import (
    IncidentWave,
    Material,
    PoleProximityError,
    ResonatorPair,
    capacitance_exact,
    capacitance_symmetric,
    eval_scattered,
    frame_from_pair,
    image_charge_capacitance,
    modal_coefficients,
    response_curve,
)

Z = np.array([0.0, 0.0, 1.0])


def _wave(omega, material, direction=Z):
    return IncidentWave.plane_wave(omega, direction, material, 1.0)


def test_plane_wave_validation(water_air):
    with pytest.raises(ValueError):
        IncidentWave.plane_wave(0.0, Z, water_air)
    with pytest.raises(ValueError):
        IncidentWave.plane_wave(1.0, [0.0, 0.0, 0.0], water_air)
    w = IncidentWave.plane_wave(2.0, [0.0, 0.0, 5.0], water_air)
    assert np.allclose(w.direction, Z)
    assert w.k == pytest.approx(2.0 / water_air.v)
    assert w.value([0.0, 0.0, 0.0]) == pytest.approx(1.0 + 0.0j)
    # phase advances along the propagation direction
    assert w.value([0.0, 0.0, 0.25 * math.pi / w.k]) == pytest.approx(
        complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    )


def test_symmetric_pair_cannot_excite_anti_phase_mode(water_air):
    # equal spheres see the same incident value, so the anti-phase
    # numerator cancels exactly, not just to rounding
    cmat = capacitance_symmetric(1.0, 0.05)
    pair = ResonatorPair(1.0, 1.0, 0.05)
    mc = modal_coefficients(cmat, pair, water_air, _wave(0.15, water_air))
    assert mc.b_numerator == 0.0
    assert mc.b == 0.0
    assert mc.a != 0.0


def test_modal_coefficients_against_image_charge_assembly(pair_12, cap_12, water_air):
    # independent route: image-charge capacitance, coefficients assembled
    # longhand in the test
    oracle_c = image_charge_capacitance(pair_12, n_reflections=500)
    m = water_air
    wave = _wave(0.15, m)
    mc = modal_coefficients(cap_12, pair_12, m, wave)

    u0 = wave.value(np.zeros(3))
    i1 = -u0 * (oracle_c.c11 + oracle_c.c12)
    i2 = -u0 * (oracle_c.c21 + oracle_c.c22)
    vol1 = 4.0 * math.pi / 3.0
    vol2 = 32.0 * math.pi / 3.0
    pref = m.delta * m.v_b**2 / (vol1 + vol2)
    a_want = pref * (i1 + i2) / (wave.omega**2 - mc.omega1**2)
    b_want = -pref * (i1 - (vol1 / vol2) * i2) / (wave.omega**2 - mc.omega2**2)
    assert mc.a == pytest.approx(a_want, rel=1e-9)
    assert mc.b == pytest.approx(b_want, rel=1e-9)


def test_amplitude_scales_with_contrast(pair_12, cap_12):
    # far above both resonances the response is linear in the contrast
    # (up to the contrast's own shift of the pole, about delta/omega^2)
    omega = 0.2
    mats = [Material(rho=1.0, rho_b=d, kappa=1.0, kappa_b=d) for d in (1e-4, 2e-4)]
    amps = [
        modal_coefficients(cap_12, pair_12, m, _wave(omega, m)).a for m in mats
    ]
    assert abs(amps[1] / amps[0]) == pytest.approx(2.0, rel=5e-3)


def test_wavelength_comparable_to_pair_warns(pair_12, cap_12, water_air):
    with pytest.warns(UserWarning, match="subwavelength"):
        modal_coefficients(cap_12, pair_12, water_air, _wave(0.5, water_air))


def test_pole_growth_rate(pair_12, cap_12, water_air):
    # |a| grows like 1/|omega^2 - omega_1^2| approaching the first pole
    probe = modal_coefficients(cap_12, pair_12, water_air, _wave(0.15, water_air))
    om1 = probe.omega1
    vals = []
    for d in (1e-3, 5e-4):
        mc = modal_coefficients(
            cap_12, pair_12, water_air, _wave(om1 * (1.0 + d), water_air)
        )
        vals.append(abs(mc.a) * abs(2.0 * d + d * d))
    assert vals[0] == pytest.approx(vals[1], rel=1e-6)


def test_pole_guard_raises(pair_12, cap_12, water_air):
    probe = modal_coefficients(cap_12, pair_12, water_air, _wave(0.15, water_air))
    with pytest.raises(PoleProximityError):
        modal_coefficients(cap_12, pair_12, water_air, _wave(probe.omega1, water_air))
    with pytest.raises(PoleProximityError):
        modal_coefficients(cap_12, pair_12, water_air, _wave(probe.omega2, water_air))


def test_label_swap_covariance(water_air):
    # relabeling the spheres keeps a and flips b by the volume ratio
    pa = ResonatorPair(1.0, 2.0, 0.05)
    pb = ResonatorPair(2.0, 1.0, 0.05)
    ca = capacitance_exact(frame_from_pair(pa), tol=1e-13)
    cb = capacitance_exact(frame_from_pair(pb), tol=1e-13)
    wave = _wave(0.15, water_air)
    ma = modal_coefficients(ca, pa, water_air, wave)
    mb = modal_coefficients(cb, pb, water_air, wave)
    assert ma.omega1 == pytest.approx(mb.omega1, rel=1e-12)
    assert ma.omega2 == pytest.approx(mb.omega2, rel=1e-12)
    assert mb.a == pytest.approx(ma.a, rel=1e-11)
    assert mb.b == pytest.approx(-(pa.volume2 / pa.volume1) * ma.b, rel=1e-11)


def test_scattered_correction_decays_like_monopole(
    pair_12, frame_12, cap_12, series_12, spectral_12, water_air
):
    wave = _wave(0.15, water_air)
    mc = modal_coefficients(cap_12, pair_12, water_air, wave)
    ray = np.array([0.5, 0.2, 0.84])
    ray /= np.linalg.norm(ray)
    mags = []
    for radius in (30.0, 60.0):
        x = radius * ray
        u = eval_scattered(mc, series_12, spectral_12, wave, x)
        mags.append(abs(u - wave.value(x)))
    assert mags[0] / mags[1] == pytest.approx(2.0, rel=0.3)


def test_scattered_field_rejects_interior_point(
    pair_12, frame_12, cap_12, series_12, spectral_12, water_air
):
    wave = _wave(0.15, water_air)
    mc = modal_coefficients(cap_12, pair_12, water_air, wave)
    with pytest.raises(ValueError):
        eval_scattered(mc, series_12, spectral_12, wave, [0.0, 0.0, frame_12.c2])


def test_response_curve_peaks_at_first_resonance(pair_12, cap_12, water_air):
    probe = modal_coefficients(cap_12, pair_12, water_air, _wave(0.15, water_air))
    om1 = probe.omega1
    # even count: an odd symmetric grid would land its midpoint on the pole
    grid = np.linspace(0.9 * om1, 1.1 * om1, 200)
    rows = response_curve(cap_12, pair_12, water_air, grid, Z)
    assert len(rows) == len(grid)
    peak = max(rows, key=lambda r: r[1])
    assert peak[0] == pytest.approx(om1, rel=5e-3)
