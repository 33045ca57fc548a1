"""Exception hierarchy shared across the package.

ValidationError covers bad user input and maps to CLI exit code 2.
InternalError covers violated invariants that should never trigger on
correct input and maps to CLI exit code 3.
"""


class DmodHodgeError(Exception):
    pass


class ValidationError(DmodHodgeError):
    pass


class InternalError(DmodHodgeError):
    pass


class AmbientMismatchError(InternalError):
    """Two polynomials with different variable lists were combined."""


class SignatureMismatchError(InternalError):
    """Two algebra elements with different signatures were combined."""


class InexactDivisionError(InternalError):
    """An exact polynomial division left a remainder."""


class NonrationalFactorError(InternalError):
    """A univariate polynomial did not split into rational linear factors."""


class NonnegativeRootError(InternalError):
    """A Bernstein-Sato polynomial had a root >= 0."""


class EliminationEmptyError(InternalError):
    """An elimination step produced no element of the required shape."""


class SubalgebraNotClosedError(InternalError):
    """Requested elimination whose surviving generators do not span a subalgebra."""


class RankMismatchError(InternalError):
    """Vector elements of different rank (or the wrong rank) were combined."""


class ConstantInputError(ValidationError):
    """A nonconstant polynomial was required."""


class NotReducedError(ValidationError):
    """The input polynomial has a repeated factor but a reduced one was required."""


class AlphaRangeError(ValidationError):
    """alpha outside the supported range (0, 1]."""


class LevelInsufficientError(ValidationError):
    """The requested level p was too small to certify a generating level."""


class PolyParseError(ValidationError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(PolyParseError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r}", position)
        self.name = name
