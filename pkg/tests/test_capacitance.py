import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bisphere import (
    ResonatorPair,
    TruncationCapError,
    capacitance_asymptotic_rescaled,
    capacitance_exact,
    capacitance_symmetric,
    frame_from_pair,
    image_charge_capacitance,
    rescale,
    sigma_terms,
)

# frozen with an mpmath (50 digit) evaluation of the bispherical series
C_12_005 = (25.06122560143623, -18.778117859663308, 40.180464148599846)
C_SYM_001 = (26.850197485122603, -18.130584124145248)


def test_series_matches_high_precision_literals(cap_12):
    c11, c12, c22 = C_12_005
    assert cap_12.c11 == pytest.approx(c11, rel=1e-12)
    assert cap_12.c12 == pytest.approx(c12, rel=1e-12)
    assert cap_12.c21 == pytest.approx(c12, rel=1e-12)
    assert cap_12.c22 == pytest.approx(c22, rel=1e-12)


def test_series_matches_image_charges(cap_12, pair_12):
    oracle = image_charge_capacitance(pair_12, n_reflections=500)
    assert cap_12.c11 == pytest.approx(oracle.c11, rel=1e-10)
    assert cap_12.c12 == pytest.approx(oracle.c12, rel=1e-10)
    assert cap_12.c22 == pytest.approx(oracle.c22, rel=1e-10)


def test_symmetric_entry_point_agrees_with_general_series():
    c_sym = capacitance_symmetric(1.0, 0.01)
    c_gen = capacitance_exact(frame_from_pair(ResonatorPair(1.0, 1.0, 0.01)))
    assert c_sym.c11 == pytest.approx(c_gen.c11, rel=1e-12)
    assert c_sym.c12 == pytest.approx(c_gen.c12, rel=1e-12)
    # identical spheres: the two diagonal series are the same sum
    assert c_sym.c11 == c_sym.c22
    assert c_sym.c11 == pytest.approx(C_SYM_001[0], rel=1e-12)
    assert c_sym.c12 == pytest.approx(C_SYM_001[1], rel=1e-12)


def test_isolated_sphere_limit():
    # a huge gap decouples the spheres: C_ii -> 4 pi r_i, C_12 -> 0
    c = capacitance_exact(frame_from_pair(ResonatorPair(1.0, 2.0, 1e3)))
    assert c.c11 == pytest.approx(4.0 * math.pi, rel=1e-3)
    assert c.c22 == pytest.approx(8.0 * math.pi, rel=1e-3)
    assert abs(c.c12) < 0.1 * c.c11


def test_truncation_tail_bound_is_honored(frame_12):
    loose = capacitance_exact(frame_12, tol=1e-6)
    tight = capacitance_exact(frame_12, tol=1e-14)
    assert loose.tail_bound <= 1e-6
    for name in ("c11", "c12", "c22"):
        assert abs(getattr(loose, name) - getattr(tight, name)) <= loose.tail_bound


def test_truncation_cap_raises(frame_12):
    with pytest.raises(TruncationCapError):
        capacitance_exact(frame_12, tol=1e-12, cap=3)


def test_rescale_divides_rows_by_volume(cap_12, pair_12):
    ct = rescale(cap_12, pair_12)
    assert ct.vol1 == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
    assert ct.vol2 == pytest.approx(32.0 * math.pi / 3.0, rel=1e-15)
    assert ct.ct11 == pytest.approx(cap_12.c11 / ct.vol1, rel=1e-15)
    assert ct.ct12 == pytest.approx(cap_12.c12 / ct.vol1, rel=1e-15)
    assert ct.ct21 == pytest.approx(cap_12.c21 / ct.vol2, rel=1e-15)
    assert ct.ct22 == pytest.approx(cap_12.c22 / ct.vol2, rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(
    r1=st.floats(min_value=0.2, max_value=5.0),
    r2=st.floats(min_value=0.2, max_value=5.0),
    eps=st.floats(min_value=1e-4, max_value=10.0),
)
def test_sign_pattern_and_dominance(r1, r2, eps):
    c = capacitance_exact(frame_from_pair(ResonatorPair(r1, r2, eps)), tol=1e-10)
    assert c.c11 > 0.0 and c.c22 > 0.0
    assert c.c12 < 0.0
    assert c.c12 == c.c21
    # rows are diagonally dominant: the grounded-conductor charge wins
    assert c.c11 + c.c12 > 0.0
    assert c.c22 + c.c21 > 0.0


def test_close_gap_asymptotics_settle():
    # rescaled entries approach the digamma closed form at root-eps rate
    errs = []
    for eps in (1e-3, 1e-5):
        pair = ResonatorPair(1.0, 2.0, eps)
        exact = rescale(capacitance_exact(frame_from_pair(pair), tol=1e-13), pair)
        asym = capacitance_asymptotic_rescaled(pair)
        errs.append(
            max(
                abs(asym.ct11 - exact.ct11),
                abs(asym.ct12 - exact.ct12),
                abs(asym.ct21 - exact.ct21),
                abs(asym.ct22 - exact.ct22),
            )
        )
    # two decades of eps should buy about one decade of error
    assert errs[1] < errs[0] * 10 ** (-1 + 0.3)


def test_asymptotic_rejects_wide_gap():
    with pytest.raises(ValueError):
        capacitance_asymptotic_rescaled(ResonatorPair(1.0, 1.0, 50.0))


def test_sigma_terms_match_diagonal_minus_offdiagonal():
    # sigma_i is the small-gap limit of ct_i1 + ct_i2, which stays bounded
    pair = ResonatorPair(1.0, 2.0, 1e-6)
    frame = frame_from_pair(pair)
    ct = rescale(capacitance_exact(frame, tol=1e-13), pair)
    st_ = sigma_terms(frame, pair)
    assert st_.sigma1 > 0.0 and st_.sigma2 > 0.0
    assert ct.ct11 + ct.ct12 == pytest.approx(st_.sigma1, rel=2e-2)
    assert ct.ct21 + ct.ct22 == pytest.approx(st_.sigma2, rel=2e-2)


def test_matrix_validation_rejects_bad_signs():
    from bisphere import CapacitanceMatrix

    with pytest.raises(ValueError):
        CapacitanceMatrix(c11=-1.0, c12=-0.5, c21=-0.5, c22=1.0, n_terms=1, tail_bound=0.0)
    with pytest.raises(ValueError):
        CapacitanceMatrix(c11=1.0, c12=0.5, c21=0.5, c22=1.0, n_terms=1, tail_bound=0.0)
    with pytest.raises(ValueError):
        # off-diagonal cannot outweigh the diagonal
        CapacitanceMatrix(c11=1.0, c12=-2.0, c21=-2.0, c22=1.0, n_terms=1, tail_bound=0.0)
