"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class RefusalError(DomainError):
    """A brute-force or exhaustive routine was asked for a size it guards against."""


class NotAdmissibleError(ValueError):
    """A permutation or row fails the admissibility requirements of an operation."""


class InvariantError(RuntimeError):
    """A mathematically guaranteed property failed to hold; indicates a bug."""
