"""Exceptions raised by circlerig."""

from typing import Any, Optional


class CircleRigError(Exception):
    """Base class for every circlerig failure."""


class ConfigError(CircleRigError):
    """An environment setting could not be parsed."""


class InternalInvariantError(CircleRigError):
    """A post-hoc mathematical assertion failed; indicates a bug."""


# core-homeo


class InvalidMap(CircleRigError):
    """Lift data does not describe an increasing degree-one map."""


class UnsupportedKind(CircleRigError):
    """The operation is not available for this kind of lift."""


class NoFixedPoint(CircleRigError):
    """The map has no fixed point and does not embed in a flow."""


class FixedPointInInterval(CircleRigError):
    """A sampled interval map has a fixed point."""


class NotPeriodic(CircleRigError):
    """The supplied orbit is not an exact periodic orbit."""


class ExchangedFixedPoints(CircleRigError):
    """g swaps the attracting and repelling points of f."""


class ContractionNotCertified(CircleRigError):
    """No power up to the search cap satisfies the containments."""


# tolerance family


class ToleranceError(CircleRigError):
    """A numerical answer could not be certified at the requested tolerance."""


class ToleranceNotReached(ToleranceError):
    """Iteration budget exhausted; carries the best enclosure found."""

    def __init__(self, message: str, best: Any = None):
        super().__init__(message)
        self.best = best


class AmbiguousAtTolerance(ToleranceError):
    """A root could not be certified simple or separated."""

    def __init__(self, message: str, interval: Optional[tuple[float, float]] = None):
        super().__init__(message)
        self.interval = interval


# rotnum


class NotIdentityLift(CircleRigError):
    """The displacement of the lift is not a constant integer."""


# surface


class MixedPresentations(CircleRigError):
    """Words over different presentations were combined."""


class InvalidWord(CircleRigError):
    """A word string or JSON record could not be parsed."""


class InvalidChain(CircleRigError):
    """Chain data disagrees with the algebraic intersection pairing."""


class InvalidDecomposition(CircleRigError):
    """A pants triple or gluing failed validation."""


class IndexOutOfRange(CircleRigError):
    """A chain index outside 1..k."""


# representation


class RelatorNotSatisfied(CircleRigError):
    """The assignment does not satisfy the surface relator."""


class UnknownGenerator(CircleRigError):
    """A word or assignment names a generator the representation lacks."""


class NotApplicable(CircleRigError):
    """The inputs fall outside the operation's hypotheses."""


class NotHyperbolic(NotApplicable):
    """A word was required to act hyperbolically."""


class CoincidentFixedPoints(NotApplicable):
    """Two fixed points that must be distinct coincide within tolerance."""


class ConstructionFailed(CircleRigError):
    """A built-in constructor failed its own verification."""


class NotDiscreteRange(CircleRigError):
    """The commutator is not hyperbolic for this parameter."""


# deform


class NotCommuting(CircleRigError):
    """The flow does not commute with the image of the curve."""


class NoGlobalFixedPoint(CircleRigError):
    """The generators share no fixed point."""


class DiscontinuityDetected(CircleRigError):
    """An integer invariant changed along a sampled path."""
