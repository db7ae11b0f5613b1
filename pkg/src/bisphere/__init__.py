"""Subwavelength resonance of two close-to-touching spherical resonators.

Exact bispherical-series capacitance, leading-order resonant frequencies
and eigenmodes, gap-gradient blow-up rates, and low-frequency scattering
response, all cross-checked against independent brute-force oracles.
"""

from .capacitance import (
    CapacitanceMatrix,
    RescaledCapacitance,
    SigmaTerms,
    capacitance_asymptotic_rescaled,
    capacitance_exact,
    capacitance_symmetric,
    rescale,
    sigma_terms,
)
from .errors import (
    ConfigError,
    PoleProximityError,
    QuadratureConvergenceError,
    RegimeUnderflowError,
    TruncationCapError,
)
from .fields import (
    BlowupStudy,
    GradientStudyRow,
    ModeDecomposition,
    PotentialSeries,
    blowup_study,
    eval_grad_mode,
    eval_grad_potential,
    eval_mode,
    eval_potential,
    h_decomposition,
    max_gap_gradient,
    potential_series,
)
from .geometry import (
    BisphericalFrame,
    BisphericalPoint,
    CartesianPoint,
    ResonatorPair,
    boundary_distance,
    classify,
    epsilon_from_regime,
    frame_from_pair,
    log_epsilon_from_regime,
    to_bispherical,
    to_cartesian,
)
from .oracle import (
    ImageChargeSystem,
    fd_check_gradient,
    fd_check_laplacian,
    flux_quadrature,
    image_charge_capacitance,
    image_charge_system,
)
from .scattering import (
    IncidentWave,
    ModalCoefficients,
    eval_scattered,
    modal_coefficients,
    response_curve,
)
from .specfun import (
    GAMMA_EULER,
    digamma,
    digamma_series_tail,
    legendre_p,
    legendre_p_deriv,
)
from .spectra import (
    Material,
    ResonantFrequencies,
    SpectralPair,
    eigen,
    resonance_asymptotic,
    resonant_frequencies,
)

__version__ = "0.1.0"

__all__ = [
    "BisphericalFrame",
    "BisphericalPoint",
    "BlowupStudy",
    "CapacitanceMatrix",
    "CartesianPoint",
    "ConfigError",
    "GAMMA_EULER",
    "GradientStudyRow",
    "ImageChargeSystem",
    "IncidentWave",
    "Material",
    "ModalCoefficients",
    "ModeDecomposition",
    "PoleProximityError",
    "PotentialSeries",
    "QuadratureConvergenceError",
    "RegimeUnderflowError",
    "RescaledCapacitance",
    "ResonantFrequencies",
    "ResonatorPair",
    "SigmaTerms",
    "SpectralPair",
    "TruncationCapError",
    "blowup_study",
    "boundary_distance",
    "capacitance_asymptotic_rescaled",
    "capacitance_exact",
    "capacitance_symmetric",
    "classify",
    "digamma",
    "digamma_series_tail",
    "eigen",
    "epsilon_from_regime",
    "eval_grad_mode",
    "eval_grad_potential",
    "eval_mode",
    "eval_potential",
    "eval_scattered",
    "fd_check_gradient",
    "fd_check_laplacian",
    "flux_quadrature",
    "frame_from_pair",
    "h_decomposition",
    "image_charge_capacitance",
    "image_charge_system",
    "legendre_p",
    "legendre_p_deriv",
    "log_epsilon_from_regime",
    "max_gap_gradient",
    "modal_coefficients",
    "potential_series",
    "rescale",
    "resonance_asymptotic",
    "resonant_frequencies",
    "response_curve",
    "sigma_terms",
    "to_bispherical",
    "to_cartesian",
]
