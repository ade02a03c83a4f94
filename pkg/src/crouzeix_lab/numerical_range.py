"""Numerical range geometry: boundary extraction, radius, containment.

The boundary of the numerical range is traced by a supporting-line
sweep: for each angle theta the top eigenvector x of the Hermitian part
of e^{-i theta} A supports the range at <Ax, x>.  On smooth strictly
convex ranges the sweep is a smooth parametrization and trapezoid sums
over it are spectrally accurate; corners (normal matrices) show up as
repeated support points and are flagged rather than hidden.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import OutOfRange

REPEAT_TOL = 1e-10


@dataclass(frozen=True)
class DomainBoundary:
    """Discretized closed boundary curve with tangents and sweep metadata."""

    nodes: np.ndarray  # complex boundary points at uniform parameter values
    thetas: np.ndarray  # parameter grid, uniform on [0, 2pi)
    tangents: np.ndarray  # d(node)/d(theta), spectral differentiation
    convex: bool = True
    strictly_convex: bool = True
    degenerate: bool = False

    @property
    def m(self):
        return self.nodes.size

    @property
    def quadrature_weight(self):
        """Uniform trapezoid weight in the parameter."""
        return 2.0 * np.pi / self.m

    def arc_elements(self):
        """|d zeta| per node for boundary integrals."""
        return np.abs(self.tangents) * self.quadrature_weight

    def to_csv_rows(self):
        for t, z, dz in zip(self.thetas, self.nodes, self.tangents):
            yield t, z.real, z.imag, dz.real, dz.imag


def _spectral_tangents(nodes):
    m = nodes.size
    freqs = np.fft.fftfreq(m, d=1.0 / m)
    if m % 2 == 0:
        freqs[m // 2] = 0.0  # drop the unmatched Nyquist mode
    return np.fft.ifft(1j * freqs * np.fft.fft(nodes))


def _signed_area(nodes):
    rolled = np.roll(nodes, -1)
    return 0.5 * np.sum(nodes.real * rolled.imag - nodes.imag * rolled.real)


def _convexity_flags(nodes):
    """(convex, strictly_convex) from cross products and repeated nodes."""
    scale = max(np.max(np.abs(nodes)), 1e-300)
    edges = np.roll(nodes, -1) - nodes
    repeated = np.abs(edges) <= REPEAT_TOL * scale
    nxt = np.roll(edges, -1)
    cross = edges.real * nxt.imag - edges.imag * nxt.real
    convex = bool(np.all(cross >= -1e-10 * scale * scale))
    return convex, convex and not bool(np.any(repeated))


def boundary_from_samples(nodes, thetas=None):
    """Boundary object from explicit uniform-parameter samples of a closed curve."""
    nodes = np.asarray(nodes, dtype=complex)
    m = nodes.size
    if thetas is None:
        thetas = 2.0 * np.pi * np.arange(m) / m
    if _signed_area(nodes) <= 0:
        raise OutOfRange("boundary must be positively oriented with interior area")
    convex, strictly = _convexity_flags(nodes)
    return DomainBoundary(
        nodes=nodes,
        thetas=np.asarray(thetas, dtype=float),
        tangents=_spectral_tangents(nodes),
        convex=convex,
        strictly_convex=strictly,
        degenerate=False,
    )


def boundary_from_function(curve, m=256):
    """Sample a parametrized closed curve at m uniform parameter values."""
    thetas = 2.0 * np.pi * np.arange(m) / m
    return boundary_from_samples(np.asarray(curve(thetas), dtype=complex), thetas)


def range_boundary(a, m=256):
    """Supporting-line sweep of the numerical range with m uniform angles.

    Nodes <Ax, x> always lie in the range; flat or cornered ranges are
    detected through repeated support points (strictly_convex False) and
    ranges of empty interior through vanishing area (degenerate True).
    """
    a = np.asarray(a, dtype=complex)
    if m < 16:
        raise OutOfRange("need at least 16 sweep angles")
    thetas = 2.0 * np.pi * np.arange(m) / m
    nodes = np.empty(m, dtype=complex)
    for k, theta in enumerate(thetas):
        rotated = np.exp(-1j * theta) * a
        herm = 0.5 * (rotated + rotated.conj().T)
        _, vecs = np.linalg.eigh(herm)
        x = vecs[:, -1]
        nodes[k] = np.vdot(x, a @ x)
    scale = max(np.max(np.abs(nodes)), 1e-300)
    area = _signed_area(nodes)
    degenerate = area <= 1e-12 * scale * scale
    convex, strictly = _convexity_flags(nodes)
    return DomainBoundary(
        nodes=nodes,
        thetas=thetas,
        tangents=_spectral_tangents(nodes),
        convex=convex,
        strictly_convex=strictly and not degenerate,
        degenerate=degenerate,
    )


def numerical_radius(a, coarse=64, tol=1e-10):
    """max |z| over the numerical range, by support-function scan plus refinement."""
    return kernels.numerical_radius(np.asarray(a, dtype=complex), coarse, tol)


def numerical_radius_arg(a, coarse=64, tol=1e-10):
    """(radius, maximizing sweep angle)."""
    return kernels.numerical_radius_arg(np.asarray(a, dtype=complex), coarse, tol)


def _point_in_polygon(point, nodes):
    """Even-odd ray test against the node polygon."""
    x, y = point.real, point.imag
    px, py = nodes.real, nodes.imag
    qx, qy = np.roll(px, -1), np.roll(py, -1)
    crosses = (py > y) != (qy > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_int = px + (y - py) * (qx - px) / (qy - py)
    hits = crosses & (x < x_int)
    return bool(np.count_nonzero(hits) % 2)


def _distance_to_polyline(point, nodes):
    p = np.array([point.real, point.imag])
    a = np.column_stack([nodes.real, nodes.imag])
    b = np.roll(a, -1, axis=0)
    ab = b - a
    ap = p[None, :] - a
    denom = np.sum(ab * ab, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(np.where(denom > 0, np.sum(ap * ab, axis=1) / denom, 0.0), 0.0, 1.0)
    proj = a + t[:, None] * ab
    return float(np.min(np.hypot(*(p[None, :] - proj).T)))


def spectrum_in_interior(a, boundary):
    """(all eigenvalues strictly inside the node polygon, min distance to it)."""
    eigs = np.linalg.eigvals(np.asarray(a, dtype=complex))
    inside = all(_point_in_polygon(ev, boundary.nodes) for ev in eigs)
    margin = min(_distance_to_polyline(ev, boundary.nodes) for ev in eigs)
    return inside, margin


@dataclass(frozen=True)
class RangeReport:
    boundary: DomainBoundary
    radius: float
    spectrum: np.ndarray
    spectrum_interior: bool
    interior_margin: float

    def to_json(self):
        return {
            "radius": self.radius,
            "spectrum": [{"re": ev.real, "im": ev.imag} for ev in self.spectrum],
            "spectrum_interior": self.spectrum_interior,
            "interior_margin": self.interior_margin,
            "convex": self.boundary.convex,
            "strictly_convex": self.boundary.strictly_convex,
            "degenerate": self.boundary.degenerate,
            "nodes": self.boundary.m,
        }


def range_report(a, m=256):
    """Boundary, radius (refined, not just the node maximum), and containment."""
    a = np.asarray(a, dtype=complex)
    boundary = range_boundary(a, m)
    inside, margin = spectrum_in_interior(a, boundary)
    return RangeReport(
        boundary=boundary,
        radius=numerical_radius(a),
        spectrum=np.linalg.eigvals(a),
        spectrum_interior=inside,
        interior_margin=margin,
    )
