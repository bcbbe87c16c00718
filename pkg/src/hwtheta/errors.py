"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: DomainError is a usage-level
problem (exit 2), the remaining types are numerical failures (exit 3).
"""


class HwThetaError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HwThetaError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(HwThetaError, ZeroDivisionError):
    """Evaluation was requested too close to a pole (e.g. g at the saddle)."""


class PathError(HwThetaError, ArithmeticError):
    """Path continuation failed to converge.

    Attributes
    ----------
    last_good_tau : float
        Largest tau for which a converged path point was obtained before the
        failure.
    """

    def __init__(self, message, last_good_tau=0.0):
        super().__init__(message)
        self.last_good_tau = last_good_tau


class ExtrapolationError(HwThetaError, ArithmeticError):
    """Richardson extrapolation did not meet its convergence gate.

    Attributes
    ----------
    estimate : float
        Best available extrapolated value.
    convergence : float
        Observed gap between the last two extrapolants.
    """

    def __init__(self, message, estimate=float("nan"), convergence=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.convergence = convergence


class PrecisionOverflowError(HwThetaError, ArithmeticError):
    """The working precision needed exceeds the configured ceiling.

    Attributes
    ----------
    required_bits : int
        Bits the computation would need.
    ceiling_bits : int
        Ceiling in force when the request was rejected.
    """

    def __init__(self, message, required_bits, ceiling_bits):
        super().__init__(message)
        self.required_bits = required_bits
        self.ceiling_bits = ceiling_bits
