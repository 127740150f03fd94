"""Exception types raised across the package."""


class LieAlgError(Exception):
    """Base class for every error raised by nilalg."""


class FieldMismatch(LieAlgError):
    pass


class DivisionByZero(LieAlgError, ZeroDivisionError):
    pass


class UnsupportedField(LieAlgError, ValueError):
    pass


class DimensionMismatch(LieAlgError, ValueError):
    pass


class Singular(LieAlgError):
    pass


class NotContained(LieAlgError):
    pass


class NotNilpotent(LieAlgError):
    pass


class NotAnIdeal(LieAlgError):
    pass


class NotApplicable(LieAlgError):
    pass


class JacobiFailure(LieAlgError):
    def __init__(self, triple, residual=None):
        self.triple = triple
        self.residual = residual
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class NotADerivation(LieAlgError):
    pass


class NotCentralDomain(LieAlgError):
    pass


class NotCentralImage(LieAlgError):
    pass


class NotInjective(LieAlgError):
    pass


class AbelianInput(LieAlgError):
    pass


class WrongDerivedDim(LieAlgError):
    pass


class BadParameter(LieAlgError, ValueError):
    pass


class UnknownName(LieAlgError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class HypothesisFailure(LieAlgError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"hypotheses not satisfied: {report.failed()}")


class StructureMismatch(LieAlgError):
    pass


class BadDefset(LieAlgError):
    pass


class ProfileTooLarge(LieAlgError):
    pass


class StepNotInvertible(LieAlgError):
    def __init__(self, line_no, step, detail):
        self.line_no = line_no
        self.step = step
        self.detail = detail
        super().__init__(f"line {line_no}: `{step}` is not invertible ({detail})")


class ParseError(LieAlgError, ValueError):
    def __init__(self, message, line_no=None, column=None):
        self.line_no = line_no
        self.column = column
        self.message = message
        if line_no is not None:
            where = f"line {line_no}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
