"""Exception hierarchy shared by all ntpg modules.

Every exception carries a ``details`` dict with the minimal witness data
(first violating element, pair or triple under element-index order), so the
CLI can serialize failures without string parsing.
"""


class AlgebraError(Exception):
    """Base class: a structured failure with witness details."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def report(self):
        return {"error": type(self).__name__,
                "message": str(self),
                "details": self.details}


class InvalidInput(AlgebraError):
    """Malformed input data (bad shapes, out-of-range indices, bad JSON)."""


# -- group validation ------------------------------------------------------

class NotLatinSquare(AlgebraError):
    pass


class NonAssociative(AlgebraError):
    pass


class NoIdentity(AlgebraError):
    pass


class NoInverse(AlgebraError):
    pass


class ParentMismatch(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotAnAction(AlgebraError):
    pass


class ClosureCapExceeded(AlgebraError):
    pass


# -- groupoids -------------------------------------------------------------

class ActionNotFree(AlgebraError):
    pass


class NotCompatible(AlgebraError):
    pass


class NotFree(AlgebraError):
    pass


class SplitFailure(AlgebraError):
    pass


class NotTrivialized(AlgebraError):
    pass


class NotMultiplicative(AlgebraError):
    pass


# -- principal structures --------------------------------------------------

class NotAnActionByAutomorphisms(AlgebraError):
    pass


class DiagramFailure(AlgebraError):
    pass


# -- graded polynomial maps ------------------------------------------------

class SignatureMismatch(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class IllegalMonomial(AlgebraError):
    pass


class NotInvertibleChart(AlgebraError):
    pass


class EnumerationCapExceeded(AlgebraError):
    pass


# -- cocycles ----------------------------------------------------------------

class ActionIncompatibleWithFibration(AlgebraError):
    pass


class SearchCapExceeded(AlgebraError):
    pass


# -- theory oracles ----------------------------------------------------------

class InternalInconsistency(AlgebraError):
    """A consequence of the theory failed.  Indicates a bug in this library,
    never bad user input; the CLI reports it as such."""


class InternalDisagreement(InternalInconsistency):
    """Two independent criteria that must agree returned different verdicts."""
