"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and the exit status the
command-line tool reports for it.
"""


class DimGroupError(Exception):
    code = "error"
    exit_code = 1


class MalformedInput(DimGroupError):
    code = "malformed-input"
    exit_code = 1


class DivisionByZero(DimGroupError, ZeroDivisionError):
    code = "division-by-zero"
    exit_code = 3


class InvalidInput(DimGroupError, ValueError):
    code = "invalid-input"
    exit_code = 3


class NotCoprime(DimGroupError):
    code = "not-coprime"
    exit_code = 3

    def __init__(self, message, common_factor=None):
        super().__init__(message)
        self.common_factor = common_factor


class HypothesisViolation(DimGroupError):
    code = "hypothesis-violation"
    exit_code = 3


class WitnessMismatch(DimGroupError):
    code = "witness-mismatch"
    exit_code = 3


class TNotInvertible(DimGroupError):
    code = "t-not-invertible"
    exit_code = 3


class InvalidParams(DimGroupError):
    code = "invalid-params"
    exit_code = 3


class UnknownBasisMonomial(DimGroupError):
    code = "unknown-basis-monomial"
    exit_code = 3


class InexpressibleAction(DimGroupError):
    code = "inexpressible-action"
    exit_code = 3


class UnsupportedBeta(DimGroupError):
    code = "unsupported-beta"
    exit_code = 3


class NeedsRefinement(DimGroupError):
    """A sign could not be decided from the available numeric enclosures."""

    code = "needs-refinement"
    exit_code = 4


class SearchExhausted(DimGroupError):
    code = "search-exhausted"
    exit_code = 4


class FamilyTooLarge(DimGroupError):
    code = "family-too-large"
    exit_code = 4


class InclusionFailed(DimGroupError):
    """A power of the claimed generator failed the invariance check."""

    code = "inclusion-failed"
    exit_code = 2

    def __init__(self, message, power=None, witness=None):
        super().__init__(message)
        self.power = power
        self.witness = witness
