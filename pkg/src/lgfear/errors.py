"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of the requested operation.

    Raised e.g. for prey density x <= 0 (the vector field is singular there),
    for threshold formulas evaluated outside their validity window, or for
    operations that require an equilibrium which does not exist at the given
    parameters.
    """


class NumericalError(RuntimeError):
    """A numerical procedure failed to reach a conclusive result.

    Raised when a step budget is exhausted, a step size underflows, or an
    iterative detection loop terminates without meeting its convergence or
    rejection criteria.
    """
