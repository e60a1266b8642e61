"""Exception types shared across the package.

Two families matter to callers. Bad input data (malformed matrices,
non-positive rates, states off the simplex) derives from ModelInputError;
failures of a numerical procedure (iteration caps, integrator blow-ups,
eigensolver breakdown) derive from NumericalError. The command line maps
the first family to exit code 1 and the second to exit code 2.
"""


class NetsirsError(Exception):
    """Base class for every error raised by this package."""


class ModelInputError(NetsirsError):
    """Invalid input data or arguments."""


class NumericalError(NetsirsError):
    """A numerical procedure failed to deliver a trustworthy result."""


# --- input side ---------------------------------------------------------


class DimensionMismatchError(ModelInputError):
    """Matrix and vector shapes are inconsistent."""


class NegativeEntryError(ModelInputError):
    """The interaction matrix must be entrywise nonnegative."""


class NonPositiveRateError(ModelInputError):
    """Recovery and immunity-loss rates must be strictly positive."""


class ReducibleError(ModelInputError):
    """The support digraph of the interaction matrix is not strongly connected."""


class OutOfSimplexError(ModelInputError):
    """A state vector leaves the unit simplex beyond tolerance."""


class InvalidInitialError(ModelInputError):
    """An initial condition lies outside the admissible state space."""


class NonPositiveVectorError(ModelInputError):
    """A strictly positive vector was required."""


class NotIrreducibleError(ModelInputError):
    """A spectral routine needs an irreducible nonnegative matrix."""


class OutOfCapError(ModelInputError):
    """An infection profile exceeds its componentwise cap 1/(1+alpha)."""


class NonPositiveEquilibriumError(ModelInputError):
    """An endemic profile must be strictly positive."""


class NotEquilibriumError(ModelInputError):
    """The supplied point does not satisfy the stationarity residual."""


class SingularShiftError(ModelInputError):
    """A diagonal shift delta_i + lambda vanished."""


class InvalidAtBoundaryError(ModelInputError):
    """A Lyapunov term is undefined on the boundary (b'y = 0)."""


# --- numerical side -----------------------------------------------------


class NoConvergenceError(NumericalError):
    """An iteration hit its cap before reaching the requested tolerance."""


class EpsilonStarNotFoundError(NumericalError):
    """No positive scale made the fixed-point map expand the lower start."""


class SimplexViolationError(NumericalError):
    """An integrated state drifted off the simplex beyond tolerance."""


class EigenFailureError(NumericalError):
    """The dense eigensolver did not converge."""
