"""Exceptions raised by supersparse."""


class AlgorithmFailed(RuntimeError):
    """A randomized routine gave up (the FAIL outcome of a Monte Carlo algorithm)."""


class NotInvertible(ZeroDivisionError):
    """Element shares a factor with the modulus."""

    def __init__(self, value, modulus):
        super().__init__(f"{value} is not invertible modulo {modulus}")
        self.value = value
        self.modulus = modulus


class DenominatorNotUnit(NotInvertible):
    """The divisor of a quotient black box vanishes (is a zero divisor) at the probe point."""


class SingularSystem(ArithmeticError):
    """A transposed Vandermonde system hit a non-unit pivot."""


class DegreeBoundViolated(ValueError):
    """An exponent does not fit under the stated degree bound."""


class NotDivisible(ArithmeticError):
    """Long division left a nonzero remainder."""


class FormatError(ValueError):
    """Malformed SPOLY or SLP text."""
