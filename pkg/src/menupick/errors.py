"""Exception types raised across the package.

Every error carries enough structure that callers (and the CLI) can react
without parsing messages: index errors name the offending index and the
valid range, budget errors name the bound that was exceeded.
"""


class MenupickError(Exception):
    """Base class for all package-specific errors."""


class ItemIndexError(MenupickError, IndexError):
    """An item index fell outside the ground set 0..n-1."""

    def __init__(self, item: int, n: int):
        self.item = item
        self.n = n
        super().__init__(f"item index {item} out of range for ground set of size {n}")


class FunctionIndexError(MenupickError, IndexError):
    """A function index fell outside 0..m-1."""

    def __init__(self, index: int, m: int):
        self.index = index
        self.m = m
        super().__init__(f"function index {index} out of range for {m} functions")


class PreconditionError(MenupickError, ValueError):
    """An operation was called with arguments that violate its contract."""


class CardinalityError(MenupickError, ValueError):
    """A candidate set exceeds the cardinality bound k."""

    def __init__(self, size: int, k: int):
        self.size = size
        self.k = k
        super().__init__(f"candidate set has {size} items, exceeding the bound k={k}")


class BudgetError(MenupickError, RuntimeError):
    """Requested work exceeds a configured enumeration budget.

    ``needed`` is the amount of work the request implies, ``budget`` the
    configured cap, ``what`` a short name for the budgeted quantity.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} exceeds the configured budget of {budget}")


class SchemaError(MenupickError, ValueError):
    """An instance or report document failed schema validation."""
