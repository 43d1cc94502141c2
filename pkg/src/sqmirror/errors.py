"""Exception types shared across the package."""

from __future__ import annotations


class SqmirrorError(Exception):
    """Base class for all package-specific errors."""


class RingMismatchError(SqmirrorError):
    """Binary operation on values from incompatible coefficient rings."""


class NotInvertibleError(SqmirrorError):
    """Series or ring element has no inverse (non-unit constant term)."""


class NotReversibleError(SqmirrorError):
    """Series is not of the form q * (unit series) and cannot be reverted."""


class SingularEquationError(SqmirrorError):
    """Implicit series equation has a non-invertible linearization."""


class DomainError(SqmirrorError):
    """Input outside the mathematical domain of the operation."""


class TheoremDomainError(DomainError):
    """Inputs violate the hypotheses the identity is stated under."""


class InvalidTupleError(DomainError):
    """Exponent tuple contains a zero entry."""


class RangeError(DomainError):
    """Degree or descendant power outside the admissible range."""


class PoleError(SqmirrorError):
    """Evaluation of a rational function at one of its poles."""


class FrameError(SqmirrorError):
    """Torus weight frame violates a validity requirement."""


class ResonanceError(FrameError):
    """A required evaluation point collides with a pole of the series."""


class DependencyError(SqmirrorError):
    """A required auxiliary data provider is missing or incomplete."""


class UsageError(SqmirrorError):
    """Malformed run configuration."""
