"""Exception hierarchy shared by every ppforge module."""

from __future__ import annotations


class PPForgeError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PPForgeError, ValueError):
    pass


class KindMismatch(PPForgeError, TypeError):
    pass


class InvalidInput(PPForgeError, ValueError):
    pass


class NotInvertible(PPForgeError, ArithmeticError):
    pass


class ZeroWeight(PPForgeError, ValueError):
    pass


class NonRationalScalar(PPForgeError, ValueError):
    pass


class MalformedInput(PPForgeError, ValueError):
    """Unparseable or schema-invalid document; carries an optional location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 path: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
        self.line = line
        self.column = column
        self.path = path


class UnknownCheck(PPForgeError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown check"


class VerificationError(PPForgeError, ValueError):
    """A precondition expressed as an identity check failed; keeps the report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotRotaBaxter(VerificationError):
    pass


class NotSymplectic(VerificationError):
    pass


class NotABialgebra(VerificationError):
    pass


class NotLRInvariant(VerificationError):
    pass


class NotFactorizable(VerificationError):
    pass


class NotQuadraticRB(VerificationError):
    pass


class NotRBSymplectic(VerificationError):
    pass
