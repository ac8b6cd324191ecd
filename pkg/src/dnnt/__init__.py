"""Exact-arithmetic toolkit for discrete neural network training (D-NNT)."""

from .errors import (
    ActivationError,
    BudgetExceeded,
    DecimalFormatError,
    DnntError,
    FormatError,
    InfeasibleWitness,
    MembershipError,
    NonIntegerError,
    OutOfRangeError,
    PreconditionError,
    ValidationError,
)
from .exactnum import ExactDec, dec

__version__ = "0.1.0"

__all__ = [
    "ExactDec", "dec", "DnntError", "DecimalFormatError", "NonIntegerError", "OutOfRangeError",
    "ActivationError", "ValidationError", "FormatError", "MembershipError", "BudgetExceeded",
    "PreconditionError", "InfeasibleWitness",
]
