"""Error hierarchy shared by all modules.

Every user-facing failure carries the process exit code the CLI maps it to.
Internal retry signals (UndecidedError) are caught and re-raised as a
bound-exceeded error if they survive the retry protocol.
"""


class GermCalcError(Exception):
    """Base class for all domain errors."""

    exit_code = 1


class InputError(GermCalcError):
    """Malformed input text, JSON, or polynomial grammar."""

    exit_code = 2


class NotAFiniteError(GermCalcError):
    """An infinite colength or non-isolated singularity was detected."""

    exit_code = 3


class UnsupportedError(GermCalcError):
    """Input outside the supported class (corank 2, missing prenormal form, ...)."""

    exit_code = 4


class JetBoundExceededError(GermCalcError):
    """No stable/complete result below the configured maximum bound."""

    exit_code = 5


class InconsistentInvariantsError(GermCalcError):
    """Computed raw invariants violate a structural identity (parity, sign, route)."""

    exit_code = 6


class UndecidedError(GermCalcError):
    """Degree bound too small for a complete standard basis; caller should retry."""

    exit_code = 5


class ExactDivisionError(GermCalcError):
    """Polynomial division that was assumed exact left a remainder (internal bug)."""

    exit_code = 1
