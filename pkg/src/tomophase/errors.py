"""
Error and warning types raised by tomophase.
"""
from tomophase.internal.errors import (
    AliasingRisk,
    AxisMismatchError,
    BudgetExceededError,
    ConfigParseError,
    ConfigValidationError,
    InconsistentUnitsError,
    InvariantCheckError,
    NonPositiveSpanError,
    NotKirkwoodError,
    NotWignerError,
    OffsetClipping,
    OutOfRangeError,
    OutputError,
    RegimeViolationError,
    TomophaseError,
    TooFewSamplesError,
    UnitMismatchError,
    VanishingScan,
)

__all__ = [
    'AliasingRisk',
    'AxisMismatchError',
    'BudgetExceededError',
    'ConfigParseError',
    'ConfigValidationError',
    'InconsistentUnitsError',
    'InvariantCheckError',
    'NonPositiveSpanError',
    'NotKirkwoodError',
    'NotWignerError',
    'OffsetClipping',
    'OutOfRangeError',
    'OutputError',
    'RegimeViolationError',
    'TomophaseError',
    'TooFewSamplesError',
    'UnitMismatchError',
    'VanishingScan',
]
