"""Exception hierarchy shared by all modules."""


class LogSympError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class ChartMismatch(LogSympError):
    pass


class DegreeError(LogSympError):
    pass


class NonPolynomialCoefficients(LogSympError):
    pass


class InvalidCenter(LogSympError):
    pass


class PoleOnStratum(LogSympError):
    pass


class NotPoisson(LogSympError):
    pass


class DegeneratePfaffian(LogSympError):
    pass


class LogSymplecticViolation(LogSympError):
    pass


class NotClosed(LogSympError):
    pass


class StarHypothesisFails(LogSympError):
    pass


class UnsupportedGrading(LogSympError):
    pass


class NotIdentityMultiple(LogSympError):
    pass


class InvalidDiamond(LogSympError):
    pass


class ParseError(LogSympError):
    """Malformed expression or input file; carries a 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
