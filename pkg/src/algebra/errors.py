"""
Exception hierarchy for the algebra engine
"""


class AlgebraError(ValueError):
    """Base class for all engine errors"""


class RingMismatchError(AlgebraError):
    """Operands live over different rings"""


class RingValidationError(AlgebraError):
    """A ring datum violates one of its structural invariants"""


class AugmentationError(AlgebraError):
    """The augmentation (or h_0 / a u^0 contraction) was requested on an open ring"""


class WindowError(AlgebraError):
    """Evaluation would leave the materialized degree window"""


class SingularSliceError(AlgebraError):
    """An operator that must be inverted is singular on a slice"""

    def __init__(self, message: str, degree: int, sector: int = 0):
        super().__init__(message)
        self.degree = degree
        self.sector = sector


class PolynomialityError(AlgebraError):
    """Interpolation in m does not reproduce the extra probe point"""


class NilpotencyError(AlgebraError):
    """A matrix that should be nilpotent is not"""


class PreconditionError(AlgebraError):
    """Inputs do not satisfy the preconditions of a construction"""
