"""Exceptions raised by the solver.

InputError subclasses map to CLI exit code 1, NumericalError subclasses to 2.
"""


class EqByEqError(Exception):
    """Root of every error raised on purpose by this package."""


class InputError(EqByEqError):
    pass


class NumericalError(EqByEqError):
    pass


class PolynomialSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UndeclaredVariableError(PolynomialSyntaxError):
    pass


class NegativeExponentError(PolynomialSyntaxError):
    pass


class DimensionMismatchError(InputError, ValueError):
    pass


class ZeroPolynomialError(InputError, ValueError):
    pass


class UnknownGeneratorError(InputError):
    pass


class SingularMatrixError(NumericalError):
    pass


class NonGenericSliceError(NumericalError):
    """A slice motion lost or merged paths; the target slice was not generic."""
