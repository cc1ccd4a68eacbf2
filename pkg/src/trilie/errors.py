"""Exception types raised by the library."""


class TriLieError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(TriLieError, ValueError):
    pass


class NotASubspace(TriLieError, ValueError):
    pass


class NotInvertible(TriLieError, ValueError):
    pass


class InvalidAction(TriLieError, ValueError):
    pass


class InvalidRepresentation(TriLieError, ValueError):
    pass


class NotACrossedHomomorphism(TriLieError, ValueError):
    pass


class NotAHomomorphism(TriLieError, ValueError):
    pass


class ConditionTwoFails(TriLieError, ValueError):
    """The pair (psi_g, psi_h) is not compatible with the action."""


class WrongAlgebra(TriLieError, ValueError):
    pass


class NotAMorphism(TriLieError, ValueError):
    pass


class DegreeOutOfRange(TriLieError, IndexError):
    pass


class DegreeMismatch(TriLieError, ValueError):
    pass


class NotMaurerCartan(TriLieError, ValueError):
    pass


class NotACocycle(TriLieError, ValueError):
    pass


class InvalidBase(TriLieError, ValueError):
    pass
