"""Exception hierarchy.

Input problems derive from :class:`ValidationError`, numerical failures from
:class:`ComputationError`; the CLI maps them to exit codes 2 and 3.
"""


class SasakiJoinError(Exception):
    pass


class ValidationError(SasakiJoinError, ValueError):
    pass


class ComputationError(SasakiJoinError, ArithmeticError):
    pass


class SmoothnessViolation(ValidationError):
    pass


class UnsupportedWeight(ValidationError):
    pass


class DegenerateRay(ValidationError):
    pass


class ParityError(ValidationError):
    pass


class InvalidK(ValidationError):
    pass


class InvalidPQ(ValidationError):
    pass


class InputTooLarge(ValidationError):
    pass


class BracketNotFound(ComputationError):
    pass


class SingularSystem(ComputationError):
    pass
