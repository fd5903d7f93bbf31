"""Exception types used across the library."""


class SpringControlError(Exception):
    """Base class for all library-specific errors."""


class PropagationError(SpringControlError):
    """A propagation produced a non-finite state."""

    def __init__(self, omega, detail=""):
        self.omega = omega
        msg = f"propagation failed at frequency omega={omega!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SweepRateError(SpringControlError):
    """Chirp sweep rate invalid for the requested operation."""


class ErfiDomainError(SpringControlError):
    """Argument magnitude outside the supported erfi range."""


class BoundaryConditionError(SpringControlError):
    """A flat-output polynomial violates its required boundary conditions."""


class NearSingularError(SpringControlError):
    """A linear system is singular or numerically indistinguishable from one."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = f"linear system is near-singular (condition estimate {condition:.3e})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InvalidPenaltyError(SpringControlError):
    """Energy penalty weight must be strictly positive."""


class UnreachableTargetError(SpringControlError):
    """Target state lies outside the reachable set of the linear system."""

    def __init__(self, rank, dim, residual):
        self.rank = rank
        self.dim = dim
        self.residual = residual
        super().__init__(
            f"target not reachable: controllability rank {rank} < {dim} "
            f"(decomposition residual {residual:.3e})"
        )


class NotControllableError(SpringControlError):
    """Kalman controllability test failed."""

    def __init__(self, rank, dim):
        self.rank = rank
        self.dim = dim
        super().__init__(f"system not controllable: Kalman rank {rank} < {dim}")


class InterpolationConditioningError(SpringControlError):
    """Boundary-value interpolation system too ill-conditioned to solve."""

    def __init__(self, condition):
        self.condition = condition
        super().__init__(
            f"interpolation system numerically singular (condition {condition:.3e})"
        )


class ResolutionError(SpringControlError):
    """Integration step too coarse for the requested dynamics."""
