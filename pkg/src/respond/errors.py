"""Exception types used across the package.

All domain errors derive from :class:`RespondError`, so callers can catch a
single base class.  The CLI maps these onto stable exit codes.
"""


class RespondError(Exception):
    """Base class for all errors raised by this package."""


class SqueezeOverflow(RespondError):
    """Squeeze tangent reached magnitude 1: state is numerically unrepresentable."""


class SpectralOverflow(RespondError):
    """Spectral norm of a squeeze-tangent matrix is not strictly below 1."""


class NonHermitian(RespondError):
    """A rotation generator was expected to be Hermitian and is not."""


class NonSymmetric(RespondError):
    """A squeeze matrix was expected to be complex symmetric and is not."""


class NotOrthogonal(RespondError):
    """A mode-mixing matrix was expected to be real orthogonal and is not."""


class ReflectionInput(RespondError):
    """Orthogonal matrix has determinant -1; only proper rotations are supported."""


class ReconstructionFailure(RespondError):
    """A matrix factorization failed to reproduce its input within tolerance."""


class SingularMatrix(RespondError):
    """A linear solve required by a state update was singular."""


class DimensionMismatch(RespondError):
    """Array arguments have inconsistent sizes."""


class IndexOutOfRange(RespondError):
    """Electronic-state index outside the model's range."""


class UnsupportedPathway(RespondError):
    """Dephasing-dressed electronic response requested for an unsupported pathway."""


class UnsupportedSides(RespondError):
    """Interaction-side pattern without a built-in waiting-time remapping."""


class TruncationTooSmall(RespondError):
    """Fock-space truncation too small to represent the requested Hamiltonian."""


class NoConvergence(RespondError):
    """Truncation doubling hit its cap before the requested tolerance was met."""


class SchemaError(RespondError):
    """Model file failed validation."""
