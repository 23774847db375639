"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PrefactorMismatch(ValueError):
    """Two q-series with different q^(1/8) prefactors were added."""


class PoleProximityError(ArithmeticError):
    """A theta denominator is numerically zero at the requested point."""


class FixtureError(ValueError):
    """A fixed-point fixture failed validation or could not be loaded."""
