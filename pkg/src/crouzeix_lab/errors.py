"""Exception types shared across the library.

Kept in one module so callers (and the CLI exit-code mapping) can
distinguish bad input, geometry failures, and spectral preconditions
without string matching.
"""


class CrouzeixLabError(Exception):
    """Base class for all library errors."""


class OutOfRange(CrouzeixLabError):
    """Scalar argument outside its admissible interval."""


class DuplicatePoint(CrouzeixLabError):
    """Two points coincide where distinctness is required."""


class SeparationTooSmall(CrouzeixLabError):
    """Separation constant below the threshold where bounds overflow."""


class DegreeTooLarge(CrouzeixLabError):
    """Blaschke degree incompatible with the model-space dimension."""


class DegenerateRange(CrouzeixLabError):
    """Numerical range has empty interior (collinear normal spectrum)."""


class FlatBoundary(CrouzeixLabError):
    """Boundary is not strictly convex; conformal solver refuses it."""


class CenterOutside(CrouzeixLabError):
    """Requested conformal center is not strictly interior."""


class TooCloseToBoundary(CrouzeixLabError):
    """Interior evaluation point violates the distance-to-boundary margin."""


class MapConvergenceError(CrouzeixLabError):
    """Boundary-correspondence iteration did not converge."""


class IllConditionedEigenbasis(CrouzeixLabError):
    """Eigenvector matrix too ill-conditioned for the diagonalization route."""


class SpectrumTooCloseToBoundary(CrouzeixLabError):
    """Contour quadrature rejected: eigenvalue within the node-spacing margin."""


class SpectralRadiusTooLarge(CrouzeixLabError):
    """Resolvent-based density needs spectral radius strictly below one."""


class ZeroFunction(CrouzeixLabError):
    """Ratio undefined: the function vanishes on the whole boundary sample."""


class MapDomainMismatch(CrouzeixLabError):
    """Conformal map was built for a different boundary than the one supplied."""


class FactorizationMismatch(CrouzeixLabError):
    """Proposed factor pair does not multiply back to the extremal function."""
