"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: guard violations exit with 2,
property mismatches with 3, everything else that escapes with 4.
"""


class GuardError(ValueError):
    """Input is outside the range an operation supports (size or degree guard)."""


class ContextMismatch(ValueError):
    """Operands belong to different field or ring contexts."""


class PropertyMismatch(AssertionError):
    """A computed object violates a property the construction is expected to have."""


class NonFreeCodeError(PropertyMismatch):
    """A Z4 kernel computation produced a module that is not free."""


class DivisionNotExact(ArithmeticError):
    """Polynomial division left a nonzero remainder."""
