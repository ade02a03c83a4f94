"""Matrix functions by two independent routes, and the benchmark matrices.

f(A) is evaluated either through the numerical eigendecomposition
(X f(Lambda) X^-1) or through the resolvent contour integral
(1/2pi i) oint f(zeta) (zeta I - A)^-1 d zeta over a boundary enclosing
the spectrum.  The two routes share nothing numerically, so their
agreement is a real check.  Also here: the Cauchy-transform conjugate
g = K(conj f), the two-term inequality report built from it, sup-norm
ratios over the numerical range, and the Crabb and Li example matrices.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    IllConditionedEigenbasis,
    OutOfRange,
    SpectrumTooCloseToBoundary,
    ZeroFunction,
)
from .hyp_geometry import BlaschkeProduct
from .numerical_range import _distance_to_polyline

EIG_COND_LIMIT = 1e8


@dataclass(frozen=True)
class MatrixFunctionResult:
    value: np.ndarray
    route: str
    route_agreement: float = None


def _as_callable_values(f, nodes):
    """Accept a callable or an array of per-node values."""
    if callable(f):
        return np.asarray(f(nodes), dtype=complex)
    values = np.asarray(f, dtype=complex)
    if values.shape != nodes.shape:
        raise OutOfRange("boundary value array does not match the node count")
    return values


def apply_function_diag(f, a):
    """f(A) through the numerical eigendecomposition; needs a tame eigenbasis."""
    a = np.asarray(a, dtype=complex)
    vals, vecs = np.linalg.eig(a)
    cond = np.linalg.cond(vecs)
    if cond > EIG_COND_LIMIT:
        raise IllConditionedEigenbasis(f"eigenvector condition {cond:.3e} exceeds {EIG_COND_LIMIT:.0e}")
    fa = vecs @ np.diag(np.asarray(f(vals), dtype=complex)) @ np.linalg.inv(vecs)
    return MatrixFunctionResult(value=fa, route="diagonalization")


def spectrum_boundary_margin(a, boundary):
    eigs = np.linalg.eigvals(np.asarray(a, dtype=complex))
    return min(_distance_to_polyline(ev, boundary.nodes) for ev in eigs)


def apply_function_contour(f, a, boundary):
    """f(A) by trapezoid quadrature of the resolvent Cauchy integral.

    Spectrally accurate for smooth boundaries; refuses to run when an
    eigenvalue sits within two node spacings of the contour.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    values = _as_callable_values(f, boundary.nodes)
    eigs = np.linalg.eigvals(a)
    gaps = np.abs(np.roll(boundary.nodes, -1) - boundary.nodes)
    for ev in eigs:
        nearest = int(np.argmin(np.abs(boundary.nodes - ev)))
        local = max(gaps[nearest], gaps[nearest - 1])
        margin = _distance_to_polyline(ev, boundary.nodes)
        if margin < 2.0 * local:
            raise SpectrumTooCloseToBoundary(
                f"eigenvalue within {margin:.3e} of the contour "
                f"(needs {2 * local:.3e} at the local node spacing)"
            )
    shifted = boundary.nodes[:, None, None] * np.eye(n)[None, :, :] - a[None, :, :]
    resolvents = np.linalg.solve(shifted, np.broadcast_to(np.eye(n), (boundary.m, n, n)))
    weights = values * boundary.tangents * boundary.quadrature_weight / (2.0j * np.pi)
    fa = np.sum(weights[:, None, None] * resolvents, axis=0)
    return MatrixFunctionResult(value=fa, route="contour")


def apply_function(f, a, boundary=None, route="auto"):
    """Route selection with agreement reporting.

    route='auto' prefers diagonalization and falls back to the contour;
    route='both' runs the two and reports their Frobenius distance.
    """
    if route == "diag":
        return apply_function_diag(f, a)
    if route == "contour":
        return apply_function_contour(f, a, boundary)
    if route == "both":
        diag = apply_function_diag(f, a)
        cont = apply_function_contour(f, a, boundary)
        gap = float(np.linalg.norm(diag.value - cont.value, "fro"))
        return MatrixFunctionResult(value=diag.value, route="both", route_agreement=gap)
    if route != "auto":
        raise OutOfRange(f"unknown route {route!r}")
    try:
        return apply_function_diag(f, a)
    except IllConditionedEigenbasis:
        if boundary is None:
            raise
        return apply_function_contour(f, a, boundary)


def cauchy_transform_conjugate(f, boundary):
    """Boundary values of g = K(conj f), the Cauchy transform of the conjugate.

    The transform is holomorphic inside; its boundary trace (limit from
    inside) is computed with the singular node excluded and replaced by
    the analytic limit of the regularized integrand, which keeps the
    trapezoid rule spectrally accurate:

        g(z0) = conj(f(z0)) + (1/2pi i) oint (h - h(z0)) / (zeta - z0) d zeta,

    h = conj f, where the Plemelj half-jump and the principal value's
    i pi h(z0) combine into the leading term.
    """
    nodes = boundary.nodes
    m = boundary.m
    h = np.conj(_as_callable_values(f, nodes))
    dh = np.fft.ifft(1j * _fft_freqs(m) * np.fft.fft(h))
    out = np.empty(m, dtype=complex)
    for k in range(m):
        diff = nodes - nodes[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            integrand = (h - h[k]) / diff * boundary.tangents
        integrand[k] = dh[k]  # removable singularity: (h o curve)'(s) / curve'(s) * curve'(s)
        out[k] = h[k] + np.sum(integrand) * boundary.quadrature_weight / (2.0j * np.pi)
    return out


def _fft_freqs(m):
    freqs = np.fft.fftfreq(m, d=1.0 / m)
    if m % 2 == 0:
        freqs[m // 2] = 0.0
    return freqs


def cauchy_transform_interior(f, boundary, points):
    """K(conj f) evaluated at strictly interior points (plain quadrature)."""
    h = np.conj(_as_callable_values(f, boundary.nodes))
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    diff = boundary.nodes[None, :] - points[:, None]
    vals = np.sum(
        h[None, :] * boundary.tangents[None, :] / diff, axis=1
    ) * boundary.quadrature_weight / (2.0j * np.pi)
    return vals


@dataclass(frozen=True)
class StrongerConjectureReport:
    lhs: float  # ||f(A)||
    rhs: float  # ||f(A) + g(A)*||
    two_sup: float  # 2 sup |f| over the boundary
    holds_cp: bool  # rhs <= two_sup + tol (a theorem; should always hold)
    holds_strong: bool  # lhs <= rhs + tol (conjectural; reported, never asserted)


def stronger_conjecture_check(f, a, boundary, tol=1e-6):
    """Both inequalities of the two-term bound at one (f, A, boundary).

    g(A) is evaluated directly as the resolvent contour integral with
    density conj(f): for sigma(A) inside the contour this equals K(conj f)(A).
    """
    a = np.asarray(a, dtype=complex)
    values = _as_callable_values(f, boundary.nodes)
    fa = apply_function_contour(values, a, boundary).value
    ga = apply_function_contour(np.conj(values), a, boundary).value
    lhs = kernels.spectral_norm(fa)
    rhs = kernels.spectral_norm(fa + ga.conj().T)
    two_sup = 2.0 * float(np.max(np.abs(values)))
    return StrongerConjectureReport(
        lhs=lhs,
        rhs=rhs,
        two_sup=two_sup,
        holds_cp=rhs <= two_sup + tol,
        holds_strong=lhs <= rhs + tol,
    )


def sup_abs_on_boundary(f, boundary, refine=4):
    """sup |f| over the boundary nodes, with one refinement pass for callables.

    Holomorphic integrands attain their sup on the boundary, so the node
    maximum is the estimate; a callable is re-sampled on a refine-times
    denser trigonometric interpolant of the curve to guard against thin
    peaks between nodes.
    """
    values = _as_callable_values(f, boundary.nodes)
    best = float(np.max(np.abs(values)))
    if callable(f) and refine > 1:
        m = boundary.m
        dense_s = 2.0 * np.pi * np.arange(refine * m) / (refine * m)
        spec = np.fft.fft(boundary.nodes) / m
        freqs = _fft_freqs(m)
        dense_nodes = np.zeros(dense_s.size, dtype=complex)
        for c, k in zip(spec, freqs):
            dense_nodes += c * np.exp(1j * k * dense_s)
        best = max(best, float(np.max(np.abs(np.asarray(f(dense_nodes), dtype=complex)))))
    return best


def crouzeix_ratio(a, f, boundary):
    """||f(A)|| divided by the boundary sup of |f|."""
    sup = sup_abs_on_boundary(f, boundary)
    if sup == 0.0:
        raise ZeroFunction("f vanishes on the boundary sample")
    values = _as_callable_values(f, boundary.nodes)
    fa = apply_function_contour(values, a, boundary).value
    return kernels.spectral_norm(fa) / sup


def tilde_constant(c):
    """(C + 1/C)/2, the numerical-radius counterpart of a norm constant C >= 1."""
    c = float(c)
    if c < 1.0:
        raise OutOfRange(f"constant must be >= 1, got {c}")
    return 0.5 * (c + 1.0 / c)


def crabb_matrix(n):
    """Nilpotent benchmark with subdiagonal (sqrt 2, 1, ..., 1, sqrt 2).

    Spectrum {0}, numerical range the closed unit disk, and the power
    A^(n-1) has norm exactly 2.  For n = 2 the two boundary entries
    coincide; the single subdiagonal entry is 2 (= sqrt2 * sqrt2), which
    keeps the diagonal-conjugation identity and the norm values.
    """
    n = int(n)
    if n < 2:
        raise OutOfRange("need n >= 2")
    c = np.zeros((n, n), dtype=complex)
    if n == 2:
        c[1, 0] = 2.0
        return c
    sub = np.ones(n - 1)
    sub[0] = np.sqrt(2.0)
    sub[-1] = np.sqrt(2.0)
    c[np.arange(1, n), np.arange(n - 1)] = sub
    return c


def crabb_conjugation_factors(n):
    """(D, J) with crabb_matrix(n) = D^-1 J D, J the lower Jordan block."""
    n = int(n)
    d = np.ones(n)
    d[0] = np.sqrt(2.0)
    d[-1] = 1.0 / np.sqrt(2.0)
    j = np.zeros((n, n), dtype=complex)
    j[np.arange(1, n), np.arange(n - 1)] = 1.0
    return np.diag(d), j


def li_matrix(t):
    """3x3 nilpotent with superdiagonal (1, 1-t); numerical range is a disk."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"t must lie in [0, 1], got {t}")
    return np.array(
        [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0 - t], [0.0, 0.0, 0.0]], dtype=complex
    )


def li_disk_radius(t):
    """Radius of the numerical range of li_matrix(t)."""
    t = float(t)
    return np.sqrt(1.0 + (1.0 - t) ** 2) / 2.0


def sup_abs_poly_on_circle(coeffs):
    """Exact sup of |p| on the unit circle via critical points of |p|^2.

    |p(e^{it})|^2 is a trigonometric polynomial; its derivative's roots
    on the circle are found as polynomial roots, so the sup does not
    depend on any sampling density.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    deg = coeffs.size - 1
    if deg <= 0:
        return float(abs(coeffs[0])) if coeffs.size else 0.0
    # q(z) = |p|^2 on the circle has Laurent coefficients c_k, k = -deg..deg
    c = np.zeros(2 * deg + 1, dtype=complex)
    for i, ci in enumerate(coeffs):
        for j, cj in enumerate(coeffs):
            c[i - j + deg] += ci * np.conj(cj)
    # d/dt q(e^{it}) = 0  <=>  sum_k i k c_k z^k = 0, z on the circle
    dcoef = np.array([1j * (k - deg) * c[k] for k in range(2 * deg + 1)])
    roots = np.roots(dcoef[::-1]) if np.any(dcoef != 0) else np.array([1.0])
    candidates = roots[np.abs(np.abs(roots) - 1.0) < 1e-6]
    fallback = np.exp(2j * np.pi * np.arange(64) / 64)
    candidates = np.concatenate([candidates, fallback])
    z = candidates / np.abs(candidates)
    vals = np.abs(np.polynomial.polynomial.polyval(z, coeffs))
    return float(np.max(vals))


def polynomial_at_matrix(coeffs, a):
    """Horner evaluation of a polynomial at a matrix (exact reference route)."""
    a = np.asarray(a, dtype=complex)
    out = np.zeros_like(a)
    for c in reversed(np.asarray(coeffs, dtype=complex)):
        out = out @ a + c * np.eye(a.shape[0])
    return out


@dataclass(frozen=True)
class BoundaryValueTable:
    """Function known only through samples at boundary parameter values."""

    theta: np.ndarray
    values: np.ndarray

    def values_for(self, boundary):
        """Per-node values for a boundary on the same parameter grid."""
        if self.theta.size != boundary.m or not np.allclose(
            self.theta, boundary.thetas, atol=1e-12
        ):
            raise OutOfRange("boundary table parameter grid does not match the boundary")
        return self.values


def function_from_spec(spec):
    """Build an evaluator from a wire-format function description.

    Accepted forms: a Blaschke JSON object, a list of ascending
    polynomial coefficients (numbers or {re, im} objects), or a
    boundary-value table {"theta": [...], "re": [...], "im": [...]}
    (usable only against a boundary on the same parameter grid).
    """
    if isinstance(spec, dict) and "roots" in spec:
        return BlaschkeProduct.from_json(spec)
    if isinstance(spec, dict) and {"theta", "re", "im"} <= set(spec):
        theta = np.asarray(spec["theta"], dtype=float)
        vals = np.asarray(spec["re"], dtype=float) + 1j * np.asarray(spec["im"], dtype=float)
        if theta.size != vals.size:
            raise OutOfRange("boundary table columns disagree in length")
        return BoundaryValueTable(theta=theta, values=vals)
    if isinstance(spec, (list, tuple)):
        coeffs = np.array(
            [complex(c["re"], c["im"]) if isinstance(c, dict) else complex(c) for c in spec]
        )
        return lambda z: np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), coeffs)
    raise OutOfRange("unrecognized function description")
