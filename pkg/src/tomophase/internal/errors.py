"""
Errors and warnings raised by the tomophase library.
"""
from __future__ import annotations

from public import public


@public
class TomophaseError(Exception):
    """
    Base class for all tomophase errors.
    """


@public
class NonPositiveSpanError(TomophaseError):
    pass


@public
class TooFewSamplesError(TomophaseError):
    pass


@public
class AxisMismatchError(TomophaseError):
    """
    Raised when two objects that must share sampling axes do not.
    """


@public
class InconsistentUnitsError(TomophaseError):
    """
    Raised when the unit tags of a field's axes do not form a valid domain.
    """


@public
class UnitMismatchError(TomophaseError):
    """
    Raised when an axis does not carry the unit an operation requires.
    """


@public
class BudgetExceededError(TomophaseError):
    """
    Raised when a dense array would exceed the configured memory budget.
    """


@public
class NotKirkwoodError(TomophaseError):
    pass


@public
class NotWignerError(TomophaseError):
    pass


@public
class OutOfRangeError(TomophaseError):
    """
    Raised when a requested coordinate lies outside its axis range.
    """


@public
class RegimeViolationError(TomophaseError):
    """
    Raised when the local oscillator widths do not satisfy the approximation regime.
    """


@public
class ConfigParseError(TomophaseError):
    """
    Raised when a run configuration document cannot be parsed or names an unknown key.

    :ivar line: The line of the document where the problem was found, if known.
    :ivar column: The column of the document where the problem was found, if known.
    :ivar key: The dotted key which caused the problem, if known.
    """

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None, key: str | None = None):
        super().__init__(message)
        self.line: int | None = line
        self.column: int | None = column
        self.key: str | None = key


@public
class ConfigValidationError(TomophaseError):
    """
    Raised when a run configuration parses but violates a field constraint or invariant.

    :ivar invariant: The name of the violated field or invariant.
    """

    def __init__(self, message: str, *, invariant: str):
        super().__init__(message)
        self.invariant: str = invariant


@public
class InvariantCheckError(TomophaseError):
    """
    Raised when a run's numerical invariant checks fail their limits.
    """


@public
class OutputError(TomophaseError, OSError):
    """
    Raised when run outputs cannot be written.
    """


@public
class AliasingRisk(UserWarning):
    """
    Warned when a sampled signal carries significant energy at the edges of its axis.
    """


@public
class OffsetClipping(UserWarning):
    """
    Warned when a scan offset moves a shifted field by more than half its axis span.
    """


@public
class VanishingScan(UserWarning):
    """
    Warned when every quadrature of a measurement scan is zero, so it carries no distribution to invert.
    """
