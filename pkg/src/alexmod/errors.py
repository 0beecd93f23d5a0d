"""Exception hierarchy shared by all alexmod modules."""


class AlexmodError(Exception):
    """Base class for all errors raised by alexmod."""


class ValidationError(AlexmodError):
    """Bad input data; maps to CLI exit code 2."""


class CapExceeded(AlexmodError):
    """A search or computation cap was exceeded; maps to CLI exit code 3."""


class ArityMismatch(ValidationError):
    pass


class SingularSubgroup(ValidationError):
    pass


class MultivariateInput(ValidationError):
    pass


class BadOrder(ValidationError):
    pass


class UnknownGenerator(ValidationError):
    pass


class IncompatiblePhi(ValidationError):
    pass


class NonSurjectivePhi(ValidationError):
    pass


class UnknownBuiltin(ValidationError):
    pass


class SingularOperator(ValidationError):
    pass


class NotQuasiUnipotent(ValidationError):
    pass


class NonCommuting(ValidationError):
    pass


class DegenerateLines(ValidationError):
    pass


class NotEssential(ValidationError):
    pass


class TooFewLines(ValidationError):
    pass


class UnexpectedFreePart(ValidationError):
    pass


class SequenceMismatch(AlexmodError):
    """The two routes to the same dimension disagree; an implementation bug."""


class GridMismatch(ValidationError):
    pass


class BoundNotFound(CapExceeded):
    pass


class ComputationCancelled(CapExceeded):
    pass
