"""Exception hierarchy shared by every module of the package."""


class QHError(Exception):
    """Base class for all errors raised by qhtoeplitz."""


class DivisionByZero(QHError, ZeroDivisionError):
    pass


class UnsupportedPole(QHError):
    """A denominator has an irreducible factor without rational roots."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"irreducible non-linear factor in denominator: {factor}")


class NotProper(QHError):
    pass


class InadmissibleExponent(QHError):
    pass


class ZeroSymbol(QHError):
    pass


class Unsupported(QHError):
    pass


class PoleAtEvaluation(QHError):
    pass


class NoAdmissibleSolution(QHError):
    pass


class QuadratureFailure(QHError):
    pass


class SymbolSyntaxError(QHError, ValueError):
    """Raised by the symbol parser; ``position`` is a 0-based column."""

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")
