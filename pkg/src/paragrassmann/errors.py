"""Exception types shared across the package."""


class PGError(Exception):
    """Base class for domain errors raised by this package."""


class EnvironmentMismatchError(PGError):
    """Operands were built over different symbol environments."""


class DimensionMismatchError(PGError):
    """Operands have different nilpotency orders l."""


class SingularWeightError(PGError):
    """A weight appearing in a denominator is zero."""


class WrongSubspaceError(PGError):
    """Element lies outside the subspace the operation requires."""


class NotHilbertSpaceError(PGError):
    """Operation requires strictly positive weights."""


class SymbolicOrderError(PGError):
    """Operation needs an ordering, which symbolic weights do not carry."""


class ExactDivisionError(PGError):
    """Internal: a division that should be exact did not terminate."""


class SingularMatrixError(PGError):
    """An exact linear solve met a singular matrix."""


class ParseError(PGError):
    """Syntax error in an input expression, annotated with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndefiniteMetricWarning(UserWarning):
    """Weights are not all positive, so the form is indefinite."""
