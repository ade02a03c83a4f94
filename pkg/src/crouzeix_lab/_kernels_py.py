"""Pure-numpy fallback for the hot evaluation kernels.

``crouzeix_lab.kernels`` selects this module when the compiled extension
is unavailable (or when ``CRX_KERNEL=python``).  The algorithms here must
stay in lock step with ``_kernels.pyx``: same factor ordering, same scan
grid, same golden-section schedule, so that the two backends agree to
rounding error.
"""

import numpy as np

BACKEND = "python"

_INV_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_ANGLE_TOL = 1e-8


def params_to_roots(u):
    """Map unconstrained planar parameters to disk points.

    ``u`` holds 2d reals, interpreted as d planar vectors; each maps to
    alpha = tanh(|u|) * u/|u| (alpha = 0 at u = 0).  Smooth bijection of
    the plane onto the open disk, so the optimizer runs unconstrained.
    """
    u = np.asarray(u, dtype=float).reshape(-1, 2)
    mag = np.hypot(u[:, 0], u[:, 1])
    scale = np.ones_like(mag)
    nz = mag > 0
    scale[nz] = np.tanh(mag[nz]) / mag[nz]
    return (u[:, 0] + 1j * u[:, 1]) * scale


def roots_to_params(roots):
    """Inverse of :func:`params_to_roots`; clips |alpha| just inside 1."""
    roots = np.asarray(roots, dtype=complex).ravel()
    mag = np.abs(roots)
    mag_clipped = np.minimum(mag, 1.0 - 1e-12)
    scale = np.ones_like(mag)
    nz = mag > 0
    scale[nz] = np.arctanh(mag_clipped[nz]) / mag[nz]
    u = np.empty((roots.size, 2), dtype=float)
    u[:, 0] = roots.real * scale
    u[:, 1] = roots.imag * scale
    return u.ravel()


def blaschke_matrix(phi, roots, constant=1.0 + 0.0j):
    """Evaluate a finite Blaschke product at a square matrix.

    Returns c * prod_j (phi - a_j I)(I - conj(a_j) phi)^-1.  All factors
    are rational functions of the same matrix, hence commute; the two
    polynomial products are accumulated separately and a single solve
    performs the right division.
    """
    phi = np.asarray(phi, dtype=complex)
    roots = np.asarray(roots, dtype=complex).ravel()
    n = phi.shape[0]
    eye = np.eye(n, dtype=complex)
    p = eye * complex(constant)
    q = eye.copy()
    for a in roots:
        p = p @ (phi - a * eye)
        q = q @ (eye - np.conj(a) * phi)
    if roots.size == 0:
        return p
    return np.linalg.solve(q.T, p.T).T


def spectral_norm(a):
    """Largest singular value."""
    return float(np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)[0])


def blaschke_norm(phi, roots, constant=1.0 + 0.0j):
    return spectral_norm(blaschke_matrix(phi, roots, constant))


def norm_objective(phi, u):
    """Largest singular value of the Blaschke product with tanh-parametrized roots."""
    return blaschke_norm(phi, params_to_roots(u))


def herm_lambda_max(a, theta):
    """Largest eigenvalue of the Hermitian part of e^{-i theta} a."""
    b = np.exp(-1j * theta) * np.asarray(a, dtype=complex)
    h = (b + b.conj().T) * 0.5
    return float(np.linalg.eigvalsh(h)[-1])


def _golden_max(a, lo, hi):
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1 = herm_lambda_max(a, x1)
    f2 = herm_lambda_max(a, x2)
    while hi - lo > _GOLDEN_ANGLE_TOL:
        if f1 < f2:
            lo = x1
            x1, f1 = x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = herm_lambda_max(a, x2)
        else:
            hi = x2
            x2, f2 = x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = herm_lambda_max(a, x1)
    if f1 >= f2:
        return f1, x1
    return f2, x2


def numerical_radius_arg(a, coarse=64, tol=1e-10):
    """Numerical radius and a maximizing support angle.

    Coarse uniform scan of theta -> lambda_max(Re(e^{-i theta} a)), then
    golden-section refinement around every strict local maximum of the
    scan (all of them, so nearby competing lobes are not lost).  ``tol``
    is the target accuracy of the returned radius; the angular stopping
    width 1e-8 over-delivers since the objective is smooth at its peak.
    """
    a = np.asarray(a, dtype=complex)
    step = 2.0 * np.pi / coarse
    thetas = step * np.arange(coarse)
    g = np.array([herm_lambda_max(a, t) for t in thetas])
    candidates = [
        k
        for k in range(coarse)
        if g[k] >= g[k - 1]
        and g[k] >= g[(k + 1) % coarse]
        and (g[k] > g[k - 1] or g[k] > g[(k + 1) % coarse])
    ]
    if not candidates:
        candidates = [int(np.argmax(g))]
    best_val = -np.inf
    best_theta = 0.0
    for k in candidates:
        val, theta = _golden_max(a, thetas[k] - step, thetas[k] + step)
        if g[k] > val:
            val, theta = g[k], thetas[k]
        if val > best_val:
            best_val, best_theta = val, theta
    return best_val, best_theta


def numerical_radius(a, coarse=64, tol=1e-10):
    return numerical_radius_arg(a, coarse, tol)[0]


def blaschke_radius(phi, roots, constant=1.0 + 0.0j, coarse=64, tol=1e-10):
    return numerical_radius(blaschke_matrix(phi, roots, constant), coarse, tol)


def radius_objective(phi, u, coarse=64, tol=1e-10):
    """Numerical radius of the Blaschke product with tanh-parametrized roots."""
    return blaschke_radius(phi, params_to_roots(u), 1.0 + 0.0j, coarse, tol)
