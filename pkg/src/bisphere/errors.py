"""Shared exception types for numerical failure modes."""


class TruncationCapError(RuntimeError):
    """A series would need more terms than the configured cap to meet tol."""


class QuadratureConvergenceError(RuntimeError):
    """Adaptive quadrature failed to converge within the node budget."""


class PoleProximityError(RuntimeError):
    """A requested frequency sits inside the guard band of a resonance pole."""


class RegimeUnderflowError(OverflowError):
    """The gap implied by a contrast regime underflows double precision."""


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""
