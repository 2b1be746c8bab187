"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`TropmatError`.
Errors that signal bad input derive from :class:`ValidationError`; errors that
signal a computation which ran on valid input but could not reach a result
derive from :class:`ComputationFailure`.  The command line maps the two
families to distinct exit codes.
"""


class TropmatError(Exception):
    """Base class for deliberate errors."""


class ValidationError(TropmatError, ValueError):
    """The input violates a structural requirement."""


class ComputationFailure(TropmatError):
    """Valid input, but the computation could not produce an answer."""


class AxiomViolation(ValidationError):
    pass


class EmptyGroundSet(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class LoopyMatroid(ValidationError):
    pass


class NotAFacet(ValidationError):
    pass


class AmbientMismatch(ValidationError):
    pass


class GradeOutOfRange(ValidationError):
    pass


class MatroidMismatch(ValidationError):
    pass


class WrongGrade(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotASubdivision(ValidationError):
    pass


class UnbalancedDirections(ValidationError):
    pass


class InfeasibleType(ValidationError):
    pass


class NonInjectiveEmbedding(ValidationError):
    pass


class ProjectionMismatch(ValidationError):
    pass


class UnsupportedTarget(ValidationError):
    """The target complex has cells that a straight segment can cross."""


class GenericityFailure(ComputationFailure):
    pass


class EmptySolution(ComputationFailure):
    pass


class UnbalancedResult(ComputationFailure):
    pass
