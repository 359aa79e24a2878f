"""Exception hierarchy.

Every validation failure names the rule it violates through the class name,
so the CLI can report ``type(exc).__name__`` as a stable diagnostic code.
"""


class TropmutError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TropmutError):
    """Input data violates a documented invariant."""


class InternalInconsistency(TropmutError):
    """Two independent computations that must agree did not."""


# lattice

class DegeneratePolytope(ValidationError):
    pass


class OriginNotInterior(ValidationError):
    pass


class NotAVertex(ValidationError):
    pass


# polyptych

class InvalidTropicalPoint(ValidationError):
    pass


class NonPrimitiveTropicalPoint(InvalidTropicalPoint):
    """``gcd(a, b, c) > 1``: the boundary valuation would be a multiple of a primitive one."""


class Unbounded(ValidationError):
    pass


class NonIntegralVertex(ValidationError):
    pass


class NonConvexChartImage(ValidationError):
    pass


class RedundantConstraint(ValidationError):
    pass


class NonNegativeLevel(ValidationError):
    pass


# detrop

class InvalidPolynomial(ValidationError):
    pass


class NoRationalScaling(TropmutError):
    """``a0/as`` has no rational ``s``-th root; only strata-based data is available."""


class NotNormalForm(ValidationError):
    pass


# surface / degeneration

class DegreeMismatch(ValidationError):
    pass


class CriterionOracleMismatch(InternalInconsistency):
    """The combinatorial toricity criterion and the Cox-ring oracle disagree."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class MutationIdentityFailed(InternalInconsistency):
    pass


class EmptySlice(ValidationError):
    pass


# cli

class ParseError(TropmutError):
    """Input document is not well formed."""
