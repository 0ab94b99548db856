from __future__ import annotations

from typing import Optional

from .types import ErrorKind


class StoplatError(Exception):
    kind: ErrorKind = ErrorKind.INVALID_INPUT


class ConfigError(StoplatError):
    pass


class ParseError(StoplatError):
    def __init__(self, message: str, source: str = "", line: Optional[int] = None) -> None:
        location = source
        if line is not None:
            location = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)
        self.source = source
        self.line = line


class BoundsError(StoplatError):
    pass


class CycleError(StoplatError):
    pass


class SizeMismatch(StoplatError):
    pass


class NotAMember(StoplatError):
    pass


class NotAnIdeal(StoplatError):
    pass


class NotAnExtension(StoplatError):
    pass


class NotNatural(StoplatError):
    pass


class BaseMismatch(StoplatError):
    pass


class IncompleteTable(StoplatError):
    pass


class NotIncreasing(StoplatError):
    pass


class MissingBounds(StoplatError):
    pass


class NotAntisymmetric(StoplatError):
    pass


class NotALattice(StoplatError):
    pass


class LimitExceeded(StoplatError):
    kind = ErrorKind.LIMIT_EXCEEDED


class BpsOverflow(StoplatError):
    kind = ErrorKind.LIMIT_EXCEEDED


class AxiomViolation(StoplatError):
    kind = ErrorKind.PROPERTY_VIOLATION

    def __init__(self, axiom: str, message: str = "") -> None:
        super().__init__(message or f"axiom {axiom} violated")
        self.axiom = axiom


class NotIdempotent(StoplatError):
    kind = ErrorKind.PROPERTY_VIOLATION


class NonTerminating(StoplatError):
    kind = ErrorKind.PROPERTY_VIOLATION


class InternalConsistencyError(StoplatError):
    kind = ErrorKind.INTERNAL_CONSISTENCY


_EXIT_CODES = {
    ErrorKind.INVALID_INPUT: 2,
    ErrorKind.LIMIT_EXCEEDED: 2,
    ErrorKind.PROPERTY_VIOLATION: 1,
    ErrorKind.INTERNAL_CONSISTENCY: 1,
}


def classify_error(exc: BaseException) -> ErrorKind:
    if isinstance(exc, StoplatError):
        return exc.kind
    # OS-level read failures count as bad input.
    if isinstance(exc, (OSError, UnicodeDecodeError)):
        return ErrorKind.INVALID_INPUT
    return ErrorKind.INTERNAL_CONSISTENCY


def exit_code_for(kind: ErrorKind) -> int:
    return _EXIT_CODES[kind]
