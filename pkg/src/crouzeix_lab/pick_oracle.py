"""Minimal-norm bounded interpolation via the Pick positivity criterion.

For nodes z_j in the disk and targets w_j, the smallest H-infinity norm
of an interpolant is the smallest lambda >= 0 making the matrix

    P(lambda)_{ij} = (lambda^2 - w_i conj(w_j)) / (1 - conj(z_j) z_i)

positive semidefinite.  Only the norm is produced, never the
interpolant; that is all the Earl-bound comparison needs.
"""

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange
from .hyp_geometry import earl_bound, require_disk_point, require_distinct, separation_constant

PSD_EIG_TOL = -1e-12
BISECTION_TOL = 1e-10


@dataclass(frozen=True)
class InterpolationProblem:
    nodes: tuple
    targets: tuple

    def __post_init__(self):
        nodes = tuple(require_disk_point(z, "node") for z in self.nodes)
        targets = tuple(complex(w) for w in self.targets)
        if len(nodes) != len(targets):
            raise OutOfRange(f"{len(nodes)} nodes vs {len(targets)} targets")
        if not nodes:
            raise OutOfRange("need at least one node")
        require_distinct(nodes)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)


def _pick_matrix(problem, lam):
    z = np.array(problem.nodes)
    w = np.array(problem.targets)
    denom = 1.0 - np.conj(z)[None, :] * z[:, None]  # (i, j) -> 1 - conj(z_j) z_i
    return (lam * lam - w[:, None] * np.conj(w)[None, :]) / denom


def pick_feasible(problem, lam):
    """Whether the Pick matrix at lambda is PSD (smallest eigenvalue >= -1e-12)."""
    return float(np.linalg.eigvalsh(_pick_matrix(problem, lam))[0]) >= PSD_EIG_TOL


def minimal_interpolation_norm(problem):
    """Smallest lambda with PSD Pick matrix, by bisection to 1e-10.

    Bracket: lambda = max|w_j| is always a lower bound (the interpolant
    must attain each target), and the Earl constant times max|w_j| is an
    upper bound; for a single node the answer is |w| outright.
    """
    wmax = max(abs(w) for w in problem.targets)
    if wmax == 0.0:
        return 0.0
    if len(problem.nodes) == 1:
        return wmax
    delta = separation_constant(problem.nodes).delta
    lo = wmax * delta
    hi = wmax * earl_bound(delta)
    if pick_feasible(problem, lo):
        return lo
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if pick_feasible(problem, mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class EarlCheck:
    lhs: float
    rhs: float
    holds: bool
    delta: float


def check_earl_inequality(problem, slack=1e-9):
    """Compare the Pick-oracle norm against M(delta) * max|w_j|."""
    if len(problem.nodes) < 2:
        raise OutOfRange("Earl comparison needs at least 2 nodes")
    lhs = minimal_interpolation_norm(problem)
    delta = separation_constant(problem.nodes).delta
    rhs = earl_bound(delta) * max(abs(w) for w in problem.targets)
    return EarlCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + slack, delta=delta)
