"""Error taxonomy.

Every kernel failure derives from :class:`JacobiError`; the ``category``
attribute is the stable machine-readable name surfaced by the CLI.
"""

from __future__ import annotations


class JacobiError(Exception):
    category = "JacobiError"
    exit_code = 1


class LatticeMismatch(JacobiError, ValueError):
    category = "LatticeMismatch"
    exit_code = 3


class DimensionMismatch(JacobiError, ValueError):
    category = "DimensionMismatch"
    exit_code = 3


class UnknownRootSystem(JacobiError, ValueError):
    category = "UnknownRootSystem"
    exit_code = 4


class IntegralityError(JacobiError, ValueError):
    category = "IntegralityError"
    exit_code = 5


class NotDivisible(JacobiError, ArithmeticError):
    category = "NotDivisible"
    exit_code = 10


class ZeroJacobian(JacobiError):
    category = "ZeroJacobian"
    exit_code = 11


class IndexMismatch(JacobiError):
    category = "IndexMismatch"
    exit_code = 12


class NonConstantQuotient(JacobiError):
    category = "NonConstantQuotient"
    exit_code = 13


class NonModularResidue(JacobiError):
    category = "NonModularResidue"
    exit_code = 14


class TruncationExhausted(JacobiError):
    category = "TruncationExhausted"
    exit_code = 15


class SignatureMismatch(JacobiError):
    category = "SignatureMismatch"
    exit_code = 16


class ResourceCapExceeded(JacobiError, MemoryError):
    category = "ResourceCapExceeded"
    exit_code = 17


class NotApplicable(JacobiError):
    category = "NotApplicable"
    exit_code = 18


class ParseError(JacobiError, ValueError):
    category = "ParseError"
    exit_code = 2


class ValidationFailed(JacobiError):
    """A report-only check found violations and the caller asked to fail."""

    category = "ValidationFailed"
    exit_code = 20


ALL_ERRORS = (
    LatticeMismatch,
    DimensionMismatch,
    UnknownRootSystem,
    IntegralityError,
    NotDivisible,
    ZeroJacobian,
    IndexMismatch,
    NonConstantQuotient,
    NonModularResidue,
    TruncationExhausted,
    SignatureMismatch,
    ResourceCapExceeded,
    NotApplicable,
    ParseError,
    ValidationFailed,
)
