"""Exception hierarchy shared by all modules."""


class MatKloostError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeCharacteristic(MatKloostError, ValueError):
    pass


class ReduciblePolynomial(MatKloostError, ValueError):
    pass


class FieldMismatch(MatKloostError, TypeError):
    pass


class DivisionByZero(MatKloostError, ZeroDivisionError):
    pass


class ZeroElement(MatKloostError, ValueError):
    pass


class NotASubfield(MatKloostError, ValueError):
    pass


class TowerMismatch(MatKloostError, ValueError):
    pass


class ScaleExceeded(MatKloostError):
    """A brute-force enumeration or table would exceed its size budget."""


class RootFindingFailure(MatKloostError, ArithmeticError):
    pass


class SizeMismatch(MatKloostError, ValueError):
    pass


class IndexOutOfRange(MatKloostError, ValueError):
    pass


class NonPolynomialResult(MatKloostError, AssertionError):
    """A t^n(mu) reversal left negative powers; indicates a combinatorics bug."""


class NonIntegerResult(MatKloostError, AssertionError):
    """A flag-count formula produced a non-integer; indicates a bug."""


class ZeroParameterT(MatKloostError, ValueError):
    pass


class EmptyPartition(MatKloostError, ValueError):
    pass


class SingularInput(MatKloostError, ValueError):
    pass


class CompositionMismatch(MatKloostError, ValueError):
    pass


class InvalidHypothesis(MatKloostError, ValueError):
    """Parameters do not satisfy the hypotheses of the identity being checked."""
