"""Exception hierarchy shared by every module of the package."""


class MoritaError(Exception):
    """Base class for all errors raised by ``nct_morita``."""


class SingularMatrix(MoritaError):
    pass


class NonSquare(MoritaError):
    pass


class NotSkew(MoritaError):
    pass


class NotUnimodular(MoritaError):
    pass


class NotRational(MoritaError):
    pass


class DimensionTooSmall(MoritaError):
    pass


class DimensionMismatch(MoritaError):
    pass


class ThetaMismatch(MoritaError):
    pass


class IndexOutOfRange(MoritaError):
    pass


class Theta11Singular(MoritaError):
    """The top-left 2x2 block of the deformation matrix vanishes."""


class ActionUndefined(MoritaError):
    """``C theta + D`` is singular, so ``g . theta`` does not exist.

    ``step`` is the position inside a generator word where the failure
    happened, or ``None`` for a single group element.
    """

    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class BoundaryViolation(MoritaError):
    """A grid operation pushed non-negligible mass outside the window."""


class CutoffTooSmall(MoritaError):
    pass


class UnsupportedGenerator(MoritaError):
    pass


class SchemaError(MoritaError):
    """A JSON document does not have the expected shape."""
