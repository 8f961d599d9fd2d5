"""Exception types shared across the library."""


class SRLError(Exception):
    """Base class for all library errors."""


# algebra
class InvalidScalar(SRLError):
    pass


class FieldMismatch(SRLError):
    pass


class SingularMatrix(SRLError):
    pass


class OrderCapExceeded(SRLError):
    pass


class NotSemisimple(SRLError):
    pass


class DimensionMismatch(SRLError):
    pass


# atlas
class UnsupportedSpec(SRLError):
    pass


class GeneratorValidationFailed(SRLError):
    pass


class NotIsotropicPair(SRLError):
    pass


class IsotropicAxis(SRLError):
    pass


class PreconditionViolated(SRLError):
    pass


class ActionTooLarge(SRLError):
    pass


# conjugacy / counting
class ClassTooLarge(SRLError):
    pass


class RadicalInfeasible(SRLError):
    pass


class SubgroupOrbitTooLarge(SRLError):
    pass


class Infeasible(SRLError):
    pass


class InvalidFamilyParams(SRLError):
    pass


# verifier
class NotApplicable(SRLError):
    pass


class GeneratingPairNotFound(SRLError):
    pass


class ParseError(SRLError):
    """Group-spec syntax error with position information."""

    def __init__(self, message: str, text: str = "", pos: int = 0, expected: str = ""):
        self.text = text
        self.pos = pos
        self.expected = expected
        detail = message
        if text:
            detail += f" at position {pos} in {text!r}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
