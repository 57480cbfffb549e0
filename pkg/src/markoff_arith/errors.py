"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


class BoundExceededError(RuntimeError):
    """A search bound (height, slope, depth, iteration cap) ran out."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
