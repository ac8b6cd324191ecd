"""Resource budgets, overridable through environment variables."""

import os

DEFAULT_ENUM_BUDGET = 2_000_000
DEFAULT_DIGIT_BUDGET = 10_000


def enum_budget() -> int:
    """Largest candidate count an exhaustive search may enumerate (``DNNT_ENUM_BUDGET``)."""
    return int(os.environ.get("DNNT_ENUM_BUDGET", DEFAULT_ENUM_BUDGET))


def digit_budget() -> int:
    """Largest decimal digit count of an SLP intermediate (``DNNT_SLP_DIGIT_BUDGET``)."""
    return int(os.environ.get("DNNT_SLP_DIGIT_BUDGET", DEFAULT_DIGIT_BUDGET))
