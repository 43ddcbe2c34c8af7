class FrolicError(Exception):
    """Base class for every error raised by frolic."""


class DomainError(FrolicError, ValueError):
    """A program was evaluated outside the real domain of one of its operations."""


class ZeroValuePart(DomainError):
    """Division by a jet whose value part is zero."""


class SingularValuePart(DomainError):
    """The value part of a jet matrix has no usable pivot."""


class ChartDomainError(DomainError):
    """A point lies outside the domain of the chart being used."""


class InvalidParameter(FrolicError, ValueError):
    """A builtin, spec or configuration parameter is not acceptable."""


class CurveEscapesSubset(FrolicError, ValueError):
    """A curve offered for a subset structure leaves the subset."""


class BasePointMismatch(FrolicError, ValueError):
    """Tangent vectors were combined although they sit over different points."""


class NotAProductSpace(FrolicError, TypeError):
    """A product operation was applied to a space that is not a product."""


class NotAHomomorphism(FrolicError):
    """A map offered as a group homomorphism fails the sampled check."""


class VerificationFailure(FrolicError):
    """A verification suite or an asserted property did not hold."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
