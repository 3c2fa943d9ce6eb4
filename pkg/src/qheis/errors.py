"""Exception hierarchy for the qheis package."""


class QheisError(Exception):
    """Base class for all package errors."""


class InvalidParameter(QheisError):
    """A numeric parameter is outside its admissible set (e.g. q0 in {0, 1, -1})."""


class EvaluationPole(QheisError):
    """Denominator vanishes at the requested evaluation point."""


class ZeroParameter(QheisError):
    """An algebra parameter (m or n) is zero."""


class UnknownGenerator(QheisError):
    """A word or expression refers to a generator the presentation does not have."""


class NegativePowerOfNonInvertible(QheisError):
    """Negative exponent requested on a non-invertible generator."""


class PresentationError(QheisError):
    """A rewrite-rule table is incomplete or violates the lower-degree-tail requirement."""


class InadmissibleOrder(PresentationError):
    """Requested generator order cannot carry the relation set."""


class InvalidStructuralMatrix(PresentationError):
    """Quantum torus matrix is not multiplicatively antisymmetric with q-power entries."""


class MismatchedParams(QheisError):
    """Paired algebras were built with different (m, n)."""


class WrongOrder(QheisError):
    """An S-element belongs to a presentation with a different generator order."""


class TruncationOverflow(QheisError):
    """A shift operator left the truncated weight window; enlarge the window."""


class ZeroVector(QheisError):
    """A probe was handed the zero vector."""


class DegreeTooSmall(QheisError):
    """Degree bound below the minimum the operation requires."""


class BoundMismatch(QheisError):
    """Two truncated ideals were compared at different degree bounds."""


class ConstraintViolation(QheisError):
    """Morphism family parameters violate their constraints (e.g. det != 1)."""


class TypeMismatch(QheisError):
    """Morphism composition with incompatible source/target."""


class ExprSyntaxError(QheisError):
    """Parse error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
