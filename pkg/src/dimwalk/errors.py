"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain (|x| > 1, lambda < 0, ...)."""


class OrderError(ValueError):
    """A walk would leave the admissible range of Gegenbauer orders."""


class MembershipError(ValueError):
    """A walk was asked to act on a series that fails membership validation."""


class DocumentError(ValueError):
    """A series document is malformed or uses an unsupported schema."""


class AccuracyWarning(UserWarning):
    """Internal refinement of a numerical oracle disagreed beyond its target."""
