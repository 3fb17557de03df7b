"""Exception taxonomy shared by every module.

All domain failures derive from DomainError so the CLI can map them to
exit status 1 uniformly; usage errors are argparse's business (status 2).
"""


class DomainError(Exception):
    """Base class for all structured domain errors."""


class LatticeMismatchError(DomainError):
    """Divisor classes from different lattices were combined."""


class NotRepresentableError(DomainError):
    """A quantity that must be an integer (e.g. a genus) is not."""


class UncertifiedError(DomainError):
    """A jet level was requested for a class with no ledger entry."""


class InconsistentInputError(DomainError):
    """Input data contradicts itself (bad signature, bad canonical, ...)."""


class RefinementOrderError(DomainError):
    """Reduction or refinement requested along a non-divisor."""


class NotSimpleError(DomainError):
    """A curve pair meets in more than one point where simplicity is required."""


class RibbonError(DomainError):
    """Neighborhood data needs an embedding the configuration does not carry."""


class DisconnectedError(DomainError):
    """A connected curve system was required."""


class UnsupportedTypeError(DomainError):
    """Unknown Dynkin type or constructor tag."""


class InconsistentStepError(DomainError):
    """A handle-attachment step violates the boundary-value sum rule."""


class UnknownComponentError(DomainError):
    """A step referenced a boundary component that does not exist."""


class EmptyCapError(DomainError):
    """Capping order requested for an empty boundary list."""


class ParityError(DomainError):
    """A parity constraint (even coordinate sum, even exponent) failed."""


class NonIsolatedError(DomainError):
    """Milnor computation failed to stabilize below the degree ceiling."""


class InternalInconsistencyError(DomainError):
    """An invariant that must hold by construction failed; a bug if raised."""
