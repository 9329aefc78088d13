class K3LatticeError(ValueError):
    """Base class for all errors raised by k3lattice."""


class ValidationError(K3LatticeError):
    """Malformed input: wrong dimensions, non-symmetric gram, bad JSON shape."""


class HypothesisViolation(K3LatticeError):
    """Input is well formed but violates a mathematical precondition."""
