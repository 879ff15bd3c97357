"""Exception hierarchy.

Every error carries the CLI exit code of its class, so the command line
front end can map failures without a lookup table.
"""


class SegreZetaError(Exception):
    exit_code = 1


class ParseError(SegreZetaError):
    exit_code = 2


class IdealSyntaxError(ParseError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotHomogeneous(ParseError):
    pass


class TooFewVariables(ParseError):
    pass


class PreconditionError(SegreZetaError):
    exit_code = 3


class ZeroDenominator(PreconditionError):
    pass


class NonUnitConstantTerm(PreconditionError):
    pass


class DuplicateAbscissa(PreconditionError):
    pass


class ZeroPolynomial(PreconditionError):
    pass


class NotMonomial(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class DimensionTooLarge(PreconditionError):
    pass


class BudgetExceeded(SegreZetaError):
    exit_code = 4


class ConsistencyError(SegreZetaError):
    """An internal cross-check failed; the computed result is not trustworthy."""

    exit_code = 5


class InconsistentExtraPoint(ConsistencyError):
    pass


class ResidualSpuriousPole(ConsistencyError):
    pass


class NonIntegerDegree(ConsistencyError):
    pass
