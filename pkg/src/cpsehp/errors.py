"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised by :func:`cpsehp.model.validate` with every violated invariant.

    ``violations`` is a list of ``(field, message)`` pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{field}: {msg}" for field, msg in self.violations)
        super().__init__(text)


class DomainError(ValueError):
    """Inputs outside the region where a formula is defined."""


class GridError(ValueError):
    pass


class DimensionError(ValueError):
    pass


class NumericalError(ArithmeticError):
    """A closed form lost too much precision or overflowed."""


class NonConvergence(RuntimeError):
    pass


class AssetError(RuntimeError):
    pass
