"""Exception types shared across the package.

Every error raised by the library derives from FermatError, so callers can
catch the whole family with one clause.  Where a standard builtin category
applies, the class also inherits from it (ZeroDivisionError, TypeError, ...).
"""


class FermatError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(FermatError, ZeroDivisionError):
    pass


class NonPositiveExponent(FermatError, ValueError):
    pass


class BackendMismatch(FermatError, TypeError):
    pass


class NotInvertible(FermatError, ArithmeticError):
    pass


class UndeclaredVariable(FermatError, NameError):
    pass


class DomainError(FermatError, ValueError):
    pass


class InexactPrimitive(DomainError):
    """A primitive value is not exactly representable; use the float backend."""


class ArityMismatch(FermatError, ValueError):
    pass


class DimensionMismatch(FermatError, ValueError):
    pass


class UnsupportedDimension(FermatError, ValueError):
    pass


class SingularMap(FermatError, ValueError):
    pass


class InvalidPoint(FermatError, ValueError):
    pass


class NotStandard(FermatError, ValueError):
    pass


class UnsupportedPresentation(FermatError, ValueError):
    pass


class NonPositiveT(FermatError, ValueError):
    pass


class ParseError(FermatError, ValueError):
    """Syntax error with the offending source position (0-based)."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.message = message
