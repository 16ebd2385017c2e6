"""Exception types raised across the package."""


class OpucError(Exception):
    """Base class for all package errors."""


class AdmissibilityError(OpucError, ValueError):
    """A Verblunsky coefficient (or a parameter forcing one) left the open unit disk."""


class SequenceRangeError(OpucError, IndexError):
    """A tabulated coefficient sequence was evaluated past its stored length."""


class NumericalBreakdown(OpucError, ArithmeticError):
    """A recursion became too ill-conditioned to continue in floating point."""


class ResolutionError(OpucError, ValueError):
    """A sampling grid is too coarse to resolve the band structure."""


class DegenerateError(OpucError, ValueError):
    """A 2x2 matrix has eigenvalues of (nearly) equal modulus."""


class OutOfGapError(OpucError, ValueError):
    """The requested point does not lie strictly inside a spectral gap."""


class HyperbolicityError(OpucError, ValueError):
    """A transfer matrix in the tracked range is not hyperbolic."""


class MonotonicityError(OpucError, ValueError):
    """A denominator sequence is not strictly increasing."""


class ConfigError(OpucError, ValueError):
    """Malformed experiment configuration."""
