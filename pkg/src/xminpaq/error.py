# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
class XminError(Exception):
    """Base class for errors raised when an input violates the assumptions of the
    reconstruction (inadmissible covariances, non-enclosing triangles, malformed tails)
    or when a numerical stage cannot reach its accuracy target."""

    pass


class AdmissibilityError(XminError):
    """The covariance matrix is not symmetric positive definite with Sigma^-1 1 > 0."""

    pass


class DegenerateTriangleError(XminError):
    """The triangle has (numerically) zero area."""

    pass


class InconsistentInputError(XminError):
    """A triangle and kappa do not describe any admissible covariance."""

    pass


class DomainError(XminError):
    """An argument is outside the domain of the operation."""

    pass


class ResolutionError(XminError):
    """A grid is too coarse, or a tail too short, for the requested estimate."""

    pass


class NotATriangleTransformError(XminError):
    """A radial profile is not the circular transform of an enclosing triangle."""

    pass


class MalformedAtomSetError(XminError):
    """The atoms do not pair into a single six-cycle."""

    pass


class InconsistentParametricFormError(XminError):
    """No arrangement of the parametric form closes around the origin."""

    pass


class DataError(XminError):
    """Tail data is non-monotone, zero, or otherwise unusable."""

    pass


class QuadratureError(XminError):
    """A quadrature failed to converge to the requested tolerance."""

    pass


class InversionUnstableError(XminError):
    """Numerical Laplace inversion diverged between orders."""

    pass


class FormatError(XminError):
    """An input file could not be parsed."""

    pass
