"""Exception taxonomy shared across the package.

The command line maps these onto exit codes: DomainError (and subclasses)
exit with 2, ResourceLimitError with 3, usage problems with 64.
"""


class DomainError(ValueError):
    """Arguments outside the mathematical domain (e.g. a grid side < 2)."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a configured size guard; the result would be 'too large'."""


class EmptyEnsembleError(DomainError):
    """An operation needs at least one Hamiltonian cycle but the count is zero."""


class PoleAtOriginError(DomainError):
    """Series extraction from a rational function whose denominator vanishes at 0."""


class NoPositiveRootError(DomainError):
    """Root isolation found no positive real root to bracket."""


class InsufficientTermsError(DomainError):
    """Recurrence fitting was handed fewer terms than the window requires."""


class FitError(RuntimeError):
    """A recurrence fit failed verification at the full theoretical degree bound.

    This indicates an inconsistency in the generated sequence (i.e. a bug),
    not a user error.
    """


class InvalidCycleError(DomainError):
    """An edge set or cell matrix does not describe a single closed curve."""
