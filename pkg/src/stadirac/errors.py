"""Exception types shared across the package.

The CLI maps each class onto a distinct exit code, so callers should raise
the most specific one that applies.
"""


class DomainError(ValueError):
    """An input violates an operation's precondition."""


class NumericalError(RuntimeError):
    """Time stepping produced non-finite values."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed (an implementation bug)."""
