"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    pass


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


class PoleAtExpansionPoint(ArithmeticError):
    """A series inverse was requested at a zero of the denominator."""


class PoleAtEigenvalue(ArithmeticError):
    pass


class IrrationalSpectrum(ArithmeticError):
    """The characteristic polynomial does not split over the Gaussian rationals."""

    def __init__(self, msg, residual_degree=None):
        super().__init__(msg)
        self.residual_degree = residual_degree


class NoConvergence(ArithmeticError):
    pass


class MultiplicityMismatch(ValueError):
    pass


class InconsistentSpectrum(ValueError):
    pass


class DegenerateBasis(ArithmeticError):
    pass


class JetTooShort(ValueError):
    pass


class ParseError(ValueError):
    pass
