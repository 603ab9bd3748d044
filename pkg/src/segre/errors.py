"""Exception hierarchy shared by every module and mapped to CLI exit codes."""

from __future__ import annotations

#: Largest magnitude accepted for any intermediate integer (signed 64-bit).
INT_LIMIT = 2**63 - 1

MAX_RANK = 64
MAX_GENUS = 10**6
MAX_ABS_DEGREE = 10**9


class SegreError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SegreError, ValueError):
    """Arguments violate a precondition (rank, sub-rank, congruence, range)."""


class GuardError(DomainError):
    """Arguments are well formed but lie outside the supported input guard."""


class SegreOverflowError(SegreError, ArithmeticError):
    """An exact integer left the signed 64-bit range."""


def checked(value: int) -> int:
    if not -INT_LIMIT <= value <= INT_LIMIT:
        raise SegreOverflowError(f"integer {value} exceeds the 64-bit range")
    return value
