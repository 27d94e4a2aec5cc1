"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the set where the function is defined."""


class UsageError(ValueError):
    """Malformed call: missing parameter, wrong dimension, unknown selector."""


class DegenerateInputError(ValueError):
    """Coincident points where distinct ones are required."""


class PoleError(ZeroDivisionError):
    """A Moebius map was evaluated at its pole (image is the point at infinity)."""


class RangeError(ValueError):
    """A requested radius or scale cannot be realised in the given domain."""


class ConvergenceError(RuntimeError):
    """Iterative solver stopped at ``max_iters``; ``best`` holds the last iterate's result."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class EndpointClampWarning(RuntimeWarning):
    """An argument within 1e-12 of an interval endpoint was moved onto the clamp bound."""


class MonotonicityError(RangeError):
    """A metric failed to increase along a ray, so level sets cannot be traced by bisection."""
