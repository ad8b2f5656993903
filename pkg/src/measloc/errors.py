"""Typed errors raised by the library.

Every error may carry a ``witness``: the element, set or pair that shows
the violated condition.
"""


class MeasLocError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


# lattices
class NotALattice(MeasLocError):
    pass


class NotDistributive(MeasLocError):
    pass


class NoAdjoint(MeasLocError):
    pass


class NotBoolean(MeasLocError):
    pass


# valuations
class NotReal(MeasLocError):
    pass


class NotNormal(MeasLocError):
    pass


# enhanced measurable spaces
class NotSigmaAlgebra(MeasLocError):
    pass


class NotSigmaIdeal(MeasLocError):
    pass


class NotComplete(MeasLocError):
    pass


class PreimageNotMeasurable(MeasLocError):
    pass


class PreimageNotNegligible(MeasLocError):
    pass


class DomainNotConegligible(MeasLocError):
    pass


class NotMeasurable(MeasLocError):
    pass


class NotAMeasure(MeasLocError):
    pass


class NotFinite(MeasLocError):
    pass


class InvalidTopology(MeasLocError):
    pass


# algebras
class AlgebraMismatch(MeasLocError):
    pass


class InvalidHom(MeasLocError):
    pass


# documents and harness
class ParseError(MeasLocError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(MeasLocError):
    def __init__(self, invariant, message="", witness=None):
        super().__init__(f"{invariant}: {message}" if message else invariant, witness)
        self.invariant = invariant


class UnknownCommand(MeasLocError):
    pass


class BoundExceeded(MeasLocError):
    pass
