"""Exception hierarchy shared by all critline modules."""


class CritlineError(Exception):
    """Base class for all package-specific errors."""


# --- exact series algebra ---------------------------------------------------

class NonInvertibleLeadingCoefficient(CritlineError):
    """Reciprocal requested for a series whose leading coefficient is not a
    single rational multiple of a power of L (its inverse leaves the ring)."""


class NonInvertibleLinearCoefficient(CritlineError):
    """Reversion requested for a series whose linear coefficient is not an
    invertible monomial."""


class UnsupportedConstantTerm(CritlineError):
    """Logarithm requested for a series whose constant term is not a
    non-negative power of two."""


class PositiveValuationRequired(CritlineError):
    """Composition/reversion argument must vanish at the origin."""


class MissingConstant(CritlineError):
    """Numeric evaluation hit a symbol with no binding in the environment."""


class OrderTooLarge(CritlineError):
    """Coefficient pipeline order exceeds the vetted range."""


# --- numerics ----------------------------------------------------------------

class DomainError(CritlineError):
    """Argument outside the supported domain of a special function."""


class PoleAtOne(CritlineError):
    """zeta evaluation requested at (or too close to) s = 1."""


class WindowExceeded(CritlineError):
    """zeta evaluation requested outside the supported (Re s, Im s) window."""


class NearZeroOfZeta(CritlineError):
    """Evaluation too close to a zero of zeta for the result to be meaningful."""


class PoleAtNonpositiveInteger(CritlineError):
    """digamma evaluated at a pole."""


# --- prime tables -------------------------------------------------------------

class LimitTooLarge(CritlineError):
    """Sieve limit above the configured cap."""


# --- zero tables --------------------------------------------------------------

class ParseError(CritlineError):
    """Malformed zero-table file; carries the offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class NotAscending(CritlineError):
    """Zero-table ordinates are not strictly increasing."""


class SuspiciousFirstZero(CritlineError):
    """First ordinate of a zero table is not close to 14.134725."""


class HeightExceeded(CritlineError):
    """Query height above the table's maximum ordinate."""


class InsufficientHeight(CritlineError):
    """Zero table too short for the requested evaluation point."""


class DegenerateBeta(CritlineError):
    """beta so small that the bracketing bounds blow up."""


# --- cli ----------------------------------------------------------------------

class UsageError(CritlineError):
    """Bad command-line usage (maps to exit code 2)."""
