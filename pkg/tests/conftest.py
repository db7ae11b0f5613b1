"""Shared fixtures. Session scope keeps the expensive series builds to one."""

import numpy as np
import pytest

from bisphere import (
    Material,
    ResonatorPair,
    capacitance_exact,
    eigen,
    frame_from_pair,
    potential_series,
    rescale,
)


@pytest.fixture(scope="session")
def pair_12():
    return ResonatorPair(1.0, 2.0, 0.05)


@pytest.fixture(scope="session")
def frame_12(pair_12):
    return frame_from_pair(pair_12)


@pytest.fixture(scope="session")
def cap_12(frame_12):
    return capacitance_exact(frame_12, tol=1e-12)


@pytest.fixture(scope="session")
def spectral_12(cap_12, pair_12):
    return eigen(rescale(cap_12, pair_12))


@pytest.fixture(scope="session")
def series_12(frame_12):
    return potential_series(frame_12, tol=1e-10)


@pytest.fixture(scope="session")
def pair_sym():
    return ResonatorPair(1.0, 1.0, 0.1)


@pytest.fixture(scope="session")
def frame_sym(pair_sym):
    return frame_from_pair(pair_sym)


@pytest.fixture(scope="session")
def series_sym(frame_sym):
    return potential_series(frame_sym, tol=1e-10)


@pytest.fixture(scope="session")
def spectral_sym(pair_sym, frame_sym):
    return eigen(rescale(capacitance_exact(frame_sym, tol=1e-12), pair_sym))


@pytest.fixture(scope="session")
def water_air():
    # density and bulk-modulus contrast both 1e-3, so v = v_b
    return Material(rho=1.0, rho_b=1e-3, kappa=1.0, kappa_b=1e-3)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260816)
