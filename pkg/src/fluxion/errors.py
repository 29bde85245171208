"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class IllPosedError(ValueError):
    """A boundary-value problem has no unique solution."""


class NoSteadyStateError(IllPosedError):
    """Boundary fluxes do not balance, so no steady state exists."""


class UnderdeterminedError(IllPosedError):
    """Boundary fluxes balance but no temperature level is pinned."""


class InstabilityError(ValueError):
    """An explicit-leaning time step exceeds the stability bound.

    Attributes:
        bound: the largest admissible dt for the requested theta.
    """

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound
