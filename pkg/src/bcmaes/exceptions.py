"""Exception types shared across the package."""


class NotPositiveDefinite(ValueError):
    """A matrix that must be positive definite failed factorization."""


class DimensionMismatch(ValueError):
    pass


class BadWeights(ValueError):
    pass


class DegenerateDof(ValueError):
    """Degrees of freedom too small for a finite expected covariance."""


class ArityMismatch(ValueError):
    pass


class UnknownFunction(KeyError):
    pass


class NumericalFailure(RuntimeError):
    pass
