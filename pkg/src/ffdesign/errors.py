"""Exception types shared across the package."""


class DesignError(ValueError):
    """Invalid argument or a request outside the supported design domain."""


class OutOfScopeError(DesignError):
    """Construction requested outside n/2 <= k <= n-1."""


class CapabilityError(RuntimeError):
    """The request is well-posed but too large for exhaustive methods."""


class InvariantViolation(AssertionError):
    """An identity that must hold exactly did not (e.g. a non-exact division)."""
