"""Global defaults and the enumeration budget meter.

Every potentially explosive enumeration charges a shared meter.  Running
past the limit raises SizeLimitExceeded; there is no silent truncation.
"""

import os

from .errors import SizeLimitExceeded

DEFAULT_BUDGET = 200_000
DEFAULT_CAP = 16

BUDGET_ENV_VAR = "SIGMACAT_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise SizeLimitExceeded(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")
    if value <= 0:
        raise SizeLimitExceeded(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value


class Meter:
    """Counts enumerated candidates against a hard limit."""

    __slots__ = ("limit", "count")

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else limit
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.limit:
            raise SizeLimitExceeded(
                f"enumeration budget of {self.limit} candidates exceeded"
            )
