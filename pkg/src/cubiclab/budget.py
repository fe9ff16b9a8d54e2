"""Enumeration budget handling.

Every brute-force loop in the package is guarded by a point-count budget so
that a typo in parameters fails fast instead of hanging.  The environment
variable CUBIC_LAB_BUDGET overrides the default globally; individual calls
may pass an explicit budget.
"""

import os

DEFAULT_BUDGET = 6_000_000


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured point budget."""


def enumeration_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("CUBIC_LAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CUBIC_LAB_BUDGET is not an integer: {env!r}")
    return DEFAULT_BUDGET


def check_budget(points: int, budget: int | None = None, what: str = "enumeration"):
    cap = enumeration_budget(budget)
    if points > cap:
        raise BudgetExceeded(f"{what} needs {points} points, budget is {cap}")
