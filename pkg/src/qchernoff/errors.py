"""Exception types raised across the package.

All of them derive from :class:`ValueError` so callers that only care about
"bad input" can catch that.
"""


class DimensionMismatchError(ValueError):
    pass


class NotHermitianError(ValueError):
    def __init__(self, asymmetry: float):
        super().__init__(
            f"matrix is not Hermitian: max |H - H^dagger| = {asymmetry:.3e}")
        self.asymmetry = asymmetry


class DomainError(ValueError):
    """A matrix function was asked for a value outside its domain."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class CapExceededError(ValueError):
    def __init__(self, what: str, required: int, allowed: int):
        super().__init__(
            f"{what} of {required} exceeds the configured cap of {allowed}")
        self.required = required
        self.allowed = allowed


class InvalidStateError(ValueError):
    pass


class NoSignChangeError(ValueError):
    pass
