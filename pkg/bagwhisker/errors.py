"""Exception hierarchy shared by every pipeline module."""

from typing import Dict, Optional


class BagplotError(Exception):
    """Base error. Carries the module it came from and some input context."""

    exit_code = 1

    def __init__(self, message: str, module: str = "", context: Optional[Dict] = None):
        super().__init__(message)
        self.message = message
        self.module = module
        self.context = dict(context or {})

    def to_record(self) -> Dict:
        """Machine-readable error record written by the CLI."""
        return {
            "error": type(self).__name__,
            "module": self.module,
            "message": self.message,
            "context": self.context,
        }


class InputError(BagplotError, ValueError):
    """Bad input data or bad parameters."""

    exit_code = 2


class NumericError(BagplotError, ArithmeticError):
    """Numeric or geometric degeneracy met during computation."""

    exit_code = 3


# dataset
class NonNumericCell(InputError):
    pass


class TooFewRows(InputError):
    pass


class MissingColumn(InputError):
    pass


# geometry
class EmptyInput(InputError):
    pass


class NonPositiveFactor(InputError):
    pass


class ZeroDirection(InputError):
    pass


class DegeneratePolygon(NumericError):
    pass


class CenterNotInterior(NumericError):
    pass


class NotNested(NumericError):
    pass


# depth
class BadDirectionCount(InputError):
    pass


class EmptyRegion(NumericError):
    pass


# bag
class DegenerateBag(NumericError):
    pass


# robust_scatter
class BadSubsetSize(InputError):
    pass


class SingularSubset(NumericError):
    pass


class SingularCovariance(NumericError):
    pass


class TooFewWeighted(NumericError):
    pass


# inference
class SingularMatrix(NumericError):
    pass


class DomainError(InputError):
    pass


class BadLevel(InputError):
    pass


# fence
class ZeroMedian(NumericError):
    pass


# render
class EmptyModel(NumericError):
    pass
