"""Exception hierarchy shared by every module of the toolkit."""


class DnntError(Exception):
    """Base class for all toolkit errors."""


class DecimalFormatError(DnntError, ValueError):
    """A string could not be parsed as a finite decimal."""


class NonIntegerError(DnntError, ValueError):
    """An integer-only operation received a value with a fractional part."""


class OutOfRangeError(DnntError, ValueError):
    """A value lies outside the domain of the requested operation."""


class ActivationError(DnntError):
    """An activation function was applied outside its domain.

    Carries the offending vertex (when known) and the pre-activation value.
    """

    def __init__(self, message, vertex=None, value=None):
        super().__init__(message)
        self.vertex = vertex
        self.value = value

    def __str__(self):
        base = super().__str__()
        if self.vertex is None:
            return base
        return f"vertex {self.vertex!r}: {base}"


class ValidationError(DnntError):
    """An instance violates one or more structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class FormatError(DnntError, ValueError):
    """A serialized document is malformed or carries an unknown version."""


class MembershipError(DnntError):
    """An assignment does not fit the parameter space it is used with."""


class BudgetExceeded(DnntError):
    """An enumeration or digit budget would be exceeded."""


class PreconditionError(DnntError):
    """An operation's precondition does not hold for the given instance."""


class InfeasibleWitness(DnntError):
    """A candidate witness does not certify the claimed decision."""
