"""Exception types shared across the package."""

from __future__ import annotations


class BsinfError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BsinfError):
    """Malformed polynomial expression; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ZeroPolynomialError(BsinfError):
    """The expression simplified to the zero polynomial."""


class DegreeZeroError(BsinfError):
    """The expression simplified to a nonzero constant, which is not a curve."""


class DegenerateEliminationError(BsinfError):
    """Resultant requested with respect to a variable one input does not contain."""


class PointNotOnCurveError(BsinfError):
    """Chart requested at a projective point not on the curve's leading form."""


class IrrationalDirectionError(BsinfError):
    """The leading form has a real projective root with no rational representative.

    Points at infinity are represented by primitive integer pairs, so curves
    with irrational asymptotic directions are not supported.
    """


class NonTransverseCircleError(BsinfError):
    """The sample circle is a component of the curve; the caller must perturb eps."""


class NotRealizableError(BsinfError):
    """Tuple with odd entry sum: not the invariant of any real algebraic curve."""


class UncertifiedCount(BsinfError):
    """Half-branch counts obtained through the uncertified fallback radius.

    Carries the counts so callers can keep them and flag the record instead of
    failing outright.
    """

    def __init__(self, count):
        super().__init__(
            f"half-branch counts ({count.plus}, {count.minus}) at radius "
            f"{count.epsilon_used} are not certified"
        )
        self.count = count
