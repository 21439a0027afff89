"""Define invariant syzygy workbench errors."""

from __future__ import annotations

from .types import ExitCode


class InvariantSyzygyError(Exception):
    """Define a base error."""


class UsageError(InvariantSyzygyError):
    """Malformed input file or command line."""


class RingMismatchError(InvariantSyzygyError, ValueError):
    """Operands live in different rings or have mismatched dimensions."""


class GradingError(RingMismatchError):
    """A polynomial is not homogeneous of the required weighted degree."""


class ZeroDenominatorError(InvariantSyzygyError, ZeroDivisionError):
    """Rational function with zero denominator."""


class UnsupportedInputError(InvariantSyzygyError):
    """Input is valid but outside the supported scope."""


class ModularCaseError(UnsupportedInputError):
    """Characteristic of the field divides the group order."""


class GroupTooLargeError(UnsupportedInputError):
    """Group closure exceeds the configured cap, the group may be infinite."""


class UnsupportedFieldError(UnsupportedInputError):
    """The field lacks what the computation needs, e.g. a root of unity."""


class BudgetExceededError(UnsupportedInputError):
    """Wall clock budget exhausted."""


class BoundViolationError(InvariantSyzygyError):
    """A proven bound or identity failed, which signals an implementation bug."""


class IncompleteGeneratorsError(BoundViolationError):
    """The generator set does not span the invariant ring in some degree."""


class NotZeroDimensionalError(BoundViolationError):
    """Hilbert ideal with infinite dimensional quotient."""


class IncompleteResolutionError(InvariantSyzygyError):
    """Operation needs the full resolution but only a truncation is available."""


ERRORS: dict[int, type[InvariantSyzygyError]] = {
    ExitCode.USAGE: UsageError,
    ExitCode.UNSUPPORTED: UnsupportedInputError,
    ExitCode.BOUND_VIOLATION: BoundViolationError,
}


def exit_code_for(err: BaseException) -> int:
    """Return the process exit code for a raised error."""
    for code, error in ERRORS.items():
        if isinstance(err, error):
            return int(code)
    if isinstance(err, (RingMismatchError, ZeroDenominatorError)):
        return int(ExitCode.USAGE)
    return int(ExitCode.BOUND_VIOLATION)
