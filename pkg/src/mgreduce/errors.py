"""Exception types shared across the package."""


class GuardExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured size bound.

    Raised instead of silently truncating: enumeration-based checks are
    either complete or refused.
    """


class InvalidWitness(ValueError):
    """An equivalence witness does not map one code onto the other."""
