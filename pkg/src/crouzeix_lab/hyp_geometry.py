"""Pseudohyperbolic geometry of the unit disk.

Distances rho(z, w) = |(z - w)/(1 - conj(w) z)|, separation constants of
finite point sets, the interpolation constant M(delta), and finite
Blaschke products with their factorizations.  Everything here is exact
desk-scale arithmetic on plain complex numbers; disk membership is
enforced at construction sites rather than through a wrapper type.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DuplicatePoint, OutOfRange

DISK_BOUNDARY_TOL = 1e-14
DISTINCT_TOL = 1e-12


def require_disk_point(z, name="point"):
    """Validate strict disk membership (margin 1e-14) and return z as complex."""
    z = complex(z)
    if abs(z) >= 1.0 - DISK_BOUNDARY_TOL:
        raise OutOfRange(f"{name} must lie strictly inside the unit disk, got |z| = {abs(z)!r}")
    return z


def require_distinct(points, tol=DISTINCT_TOL):
    """Raise DuplicatePoint if any two entries coincide within tol."""
    points = [complex(p) for p in points]
    for (i, a), (j, b) in combinations(enumerate(points), 2):
        if abs(a - b) <= tol:
            raise DuplicatePoint(f"points {i} and {j} coincide within {tol}: {a}, {b}")
    return points


def pseudo_distance(z, w):
    """Pseudohyperbolic distance |(z - w)/(1 - conj(w) z)| for z, w in the disk."""
    z = require_disk_point(z, "z")
    w = require_disk_point(w, "w")
    return abs((z - w) / (1.0 - np.conj(w) * z))


@dataclass(frozen=True)
class SeparationReport:
    """Separation constant of a finite disk point set.

    per_point_deltas[j] = prod_{k != j} rho(z_j, z_k); delta is their
    minimum and argmin_index the attaining j.
    """

    delta: float
    per_point_deltas: list[float]
    argmin_index: int


def separation_constant(points):
    """Separation data for >= 2 pairwise-distinct disk points."""
    points = [require_disk_point(p) for p in points]
    if len(points) < 2:
        raise OutOfRange("separation constant needs at least 2 points")
    require_distinct(points)
    per_point = []
    for j, zj in enumerate(points):
        prod = 1.0
        for k, zk in enumerate(points):
            if k != j:
                prod *= pseudo_distance(zj, zk)
        per_point.append(prod)
    argmin = int(np.argmin(per_point))
    return SeparationReport(delta=per_point[argmin], per_point_deltas=per_point, argmin_index=argmin)


def earl_bound(delta):
    """Interpolation norm constant M(delta) = (1/delta + sqrt(1/delta^2 - 1))^2.

    Evaluated as ((1 + sqrt((1 - delta)(1 + delta))) / delta)^2, which is
    exact at delta = 1 and avoids cancellation under the square root as
    delta -> 1.  Decreasing on (0, 1], with M(1) = 1.
    """
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise OutOfRange(f"delta must lie in (0, 1], got {delta!r}")
    root = np.sqrt((1.0 - delta) * (1.0 + delta))
    return ((1.0 + root) / delta) ** 2


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product c * prod_j (z - a_j)/(1 - conj(a_j) z).

    Roots live strictly inside the disk, |c| = 1.  Degree 0 (a plain
    unimodular constant) is allowed; it shows up as the trivial factor
    in factorizations.
    """

    roots: tuple = field(default_factory=tuple)
    constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        roots = tuple(require_disk_point(a, "root") for a in self.roots)
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > DISK_BOUNDARY_TOL:
            raise OutOfRange(f"constant must be unimodular, got |c| = {abs(c)!r}")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "constant", c)

    @property
    def degree(self):
        return len(self.roots)

    def __call__(self, z):
        """Evaluate at a scalar or ndarray of points with |z| <= 1."""
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, self.constant)
        for a in self.roots:
            out = out * (z - a) / (1.0 - np.conj(a) * z)
        if out.ndim == 0:
            return complex(out)
        return out

    def root_array(self):
        return np.array(self.roots, dtype=complex)

    def to_json(self):
        return {
            "c_re": self.constant.real,
            "c_im": self.constant.imag,
            "roots": [{"re": a.real, "im": a.imag} for a in self.roots],
        }

    @classmethod
    def from_json(cls, obj):
        roots = tuple(complex(r["re"], r["im"]) for r in obj["roots"])
        return cls(roots=roots, constant=complex(obj["c_re"], obj["c_im"]))


def blaschke_eval(product, z):
    """Functional form of BlaschkeProduct.__call__ (kept for symmetry with the CLI)."""
    return product(z)


def blaschke_factorizations(product):
    """All 2-way splits of the root multiset, constant carried by the first factor.

    A degree-d product yields 2^d ordered pairs (b1, b2) with
    b1 * b2 == product pointwise; degree 0 yields the single trivial
    split (product, 1).
    """
    d = product.degree
    pairs = []
    for mask in range(1 << d):
        left = tuple(a for j, a in enumerate(product.roots) if mask >> j & 1)
        right = tuple(a for j, a in enumerate(product.roots) if not mask >> j & 1)
        pairs.append(
            (
                BlaschkeProduct(roots=left, constant=product.constant),
                BlaschkeProduct(roots=right),
            )
        )
    return pairs


def mobius_disk_automorphism(a, phase=0.0):
    """Disk automorphism z -> e^{i phase} (z - a)/(1 - conj(a) z) as a callable."""
    a = require_disk_point(a, "a")
    rot = np.exp(1j * float(phase))

    def transform(z):
        z = np.asarray(z, dtype=complex)
        out = rot * (z - a) / (1.0 - np.conj(a) * z)
        if out.ndim == 0:
            return complex(out)
        return out

    return transform
