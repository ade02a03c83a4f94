# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled evaluation kernels.

Semantics mirror ``_kernels_py`` exactly: same factor ordering, same
radius scan and golden-section schedule.  The payoff is that one
objective evaluation (Blaschke product of a small matrix plus its
largest singular value) is a single C call chain into LAPACK instead of
a dozen numpy dispatches.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atanh, cos, hypot, sin, sqrt, tanh
from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesv, zgesvd, zheev

cnp.import_array()

BACKEND = "cython"

cdef extern from "complex.h":
    double complex c_conj "conj"(double complex) nogil

cdef double INV_GOLDEN = (sqrt(5.0) - 1.0) / 2.0
cdef double GOLDEN_ANGLE_TOL = 1e-8
cdef double TWO_PI = 6.283185307179586476925286766559


def params_to_roots(u):
    """Map unconstrained planar parameters to disk points (tanh radial map)."""
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


cdef void _mat_mul(int n, double complex* a, double complex* b, double complex* out) noexcept nogil:
    # row-major out = a @ b, computed column-major as out^T = b^T a^T
    cdef double complex one = 1.0
    cdef double complex zero = 0.0
    zgemm("N", "N", &n, &n, &n, &one, b, &n, a, &n, &zero, out, &n)


cdef int _right_divide(int n, double complex* p, double complex* q, int* ipiv) noexcept nogil:
    # p <- p @ q^{-1}; row-major buffers are transposes in LAPACK's view,
    # so zgesv solving q^T X = p^T leaves (p q^{-1}) row-major in p.
    cdef int info = 0
    zgesv(&n, &n, q, &n, ipiv, p, &n, &info)
    return info


cdef int _blaschke_build(int n, double complex* phi, int d, double complex* roots,
                         double complex constant, double complex* p, double complex* q,
                         double complex* f, double complex* t, int* ipiv) noexcept nogil:
    cdef int i, k
    cdef double complex a, ac
    for i in range(n * n):
        p[i] = 0.0
        q[i] = 0.0
    for i in range(n):
        p[i * n + i] = constant
        q[i * n + i] = 1.0
    for k in range(d):
        a = roots[k]
        ac = c_conj(a)
        for i in range(n * n):
            f[i] = phi[i]
        for i in range(n):
            f[i * n + i] = f[i * n + i] - a
        _mat_mul(n, p, f, t)
        for i in range(n * n):
            p[i] = t[i]
        for i in range(n * n):
            f[i] = -ac * phi[i]
        for i in range(n):
            f[i * n + i] = f[i * n + i] + 1.0
        _mat_mul(n, q, f, t)
        for i in range(n * n):
            q[i] = t[i]
    if d > 0:
        return _right_divide(n, p, q, ipiv)
    return 0


cdef double _sigma_max(int n, double complex* a, double complex* work, int lwork,
                       double* s, double* rwork, int* info) noexcept nogil:
    # destroys a; singular values land in s descending
    cdef double complex dummy
    cdef int one = 1
    zgesvd("N", "N", &n, &n, a, &n, s, &dummy, &one, &dummy, &one,
           work, &lwork, rwork, info)
    return s[0]


cdef double _herm_lmax(int n, double complex* a, double theta, double complex* h,
                       double complex* work, int lwork, double* w, double* rwork,
                       int* info) noexcept nogil:
    # h = Hermitian part of e^{-i theta} a; zheev returns ascending eigenvalues
    cdef int i, j
    cdef double complex rot = cos(theta) - 1j * sin(theta)
    for i in range(n):
        for j in range(n):
            h[i * n + j] = 0.5 * (rot * a[i * n + j] + c_conj(rot * a[j * n + i]))
    zheev("N", "L", &n, h, &n, w, work, &lwork, rwork, info)
    return w[n - 1]


cdef int _svd_lwork(int n):
    # zgesvd jobu=jobvt='N' minimum is 2n + n; pad generously
    cdef int lw = 8 * n + 16
    return lw


cdef int _heev_lwork(int n):
    return 4 * n + 16


def blaschke_matrix(phi, roots, constant=1.0 + 0.0j):
    """c * prod_j (phi - a_j I)(I - conj(a_j) phi)^-1 for a square matrix phi."""
    phi = np.ascontiguousarray(phi, dtype=complex)
    roots_arr = np.ascontiguousarray(np.asarray(roots, dtype=complex).ravel())
    cdef int n = phi.shape[0]
    cdef int d = roots_arr.size
    p = np.empty((n, n), dtype=complex)
    q = np.empty((n, n), dtype=complex)
    f = np.empty((n, n), dtype=complex)
    t = np.empty((n, n), dtype=complex)
    ipiv = np.empty(n, dtype=np.intc)
    cdef double complex[:, ::1] phi_v = phi
    cdef double complex[:, ::1] p_v = p
    cdef double complex[:, ::1] q_v = q
    cdef double complex[:, ::1] f_v = f
    cdef double complex[:, ::1] t_v = t
    cdef int[::1] ipiv_v = ipiv
    cdef double complex[::1] roots_v = roots_arr
    cdef double complex* roots_ptr = NULL
    if d > 0:
        roots_ptr = &roots_v[0]
    cdef int info = _blaschke_build(n, &phi_v[0, 0], d, roots_ptr,
                                    complex(constant), &p_v[0, 0], &q_v[0, 0],
                                    &f_v[0, 0], &t_v[0, 0], &ipiv_v[0])
    if info != 0:
        raise np.linalg.LinAlgError(f"zgesv failed with info={info}")
    return p


def spectral_norm(a):
    """Largest singular value."""
    a = np.ascontiguousarray(a, dtype=complex).copy()
    cdef int n = a.shape[0]
    cdef int lwork = _svd_lwork(n)
    s = np.empty(n, dtype=float)
    work = np.empty(lwork, dtype=complex)
    rwork = np.empty(5 * n, dtype=float)
    cdef double complex[:, ::1] a_v = a
    cdef double[::1] s_v = s
    cdef double complex[::1] work_v = work
    cdef double[::1] rwork_v = rwork
    cdef int info = 0
    cdef double out = _sigma_max(n, &a_v[0, 0], &work_v[0], lwork, &s_v[0], &rwork_v[0], &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"zgesvd failed with info={info}")
    return out


def blaschke_norm(phi, roots, constant=1.0 + 0.0j):
    return spectral_norm(blaschke_matrix(phi, roots, constant))


def herm_lambda_max(a, theta):
    """Largest eigenvalue of the Hermitian part of e^{-i theta} a."""
    a = np.ascontiguousarray(a, dtype=complex)
    cdef int n = a.shape[0]
    cdef int lwork = _heev_lwork(n)
    h = np.empty((n, n), dtype=complex)
    w = np.empty(n, dtype=float)
    work = np.empty(lwork, dtype=complex)
    rwork = np.empty(max(3 * n - 2, 1), dtype=float)
    cdef double complex[:, ::1] a_v = a
    cdef double complex[:, ::1] h_v = h
    cdef double[::1] w_v = w
    cdef double complex[::1] work_v = work
    cdef double[::1] rwork_v = rwork
    cdef int info = 0
    cdef double out = _herm_lmax(n, &a_v[0, 0], float(theta), &h_v[0, 0],
                                 &work_v[0], lwork, &w_v[0], &rwork_v[0], &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"zheev failed with info={info}")
    return out


cdef double _golden_max(int n, double complex* a, double lo, double hi,
                        double complex* h, double complex* work, int lwork,
                        double* w, double* rwork, int* info, double* theta_out) noexcept nogil:
    cdef double x1 = hi - INV_GOLDEN * (hi - lo)
    cdef double x2 = lo + INV_GOLDEN * (hi - lo)
    cdef double f1 = _herm_lmax(n, a, x1, h, work, lwork, w, rwork, info)
    cdef double f2 = _herm_lmax(n, a, x2, h, work, lwork, w, rwork, info)
    while hi - lo > GOLDEN_ANGLE_TOL:
        if f1 < f2:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + INV_GOLDEN * (hi - lo)
            f2 = _herm_lmax(n, a, x2, h, work, lwork, w, rwork, info)
        else:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - INV_GOLDEN * (hi - lo)
            f1 = _herm_lmax(n, a, x1, h, work, lwork, w, rwork, info)
    if f1 >= f2:
        theta_out[0] = x1
        return f1
    theta_out[0] = x2
    return f2


def numerical_radius_arg(a, coarse=64, tol=1e-10):
    """Numerical radius and a maximizing angle; see the numpy twin for the scheme."""
    a = np.ascontiguousarray(a, dtype=complex)
    cdef int n = a.shape[0]
    cdef int m = int(coarse)
    cdef int lwork = _heev_lwork(n)
    h = np.empty((n, n), dtype=complex)
    w = np.empty(n, dtype=float)
    work = np.empty(lwork, dtype=complex)
    rwork = np.empty(max(3 * n - 2, 1), dtype=float)
    g = np.empty(m, dtype=float)
    cdef double complex[:, ::1] a_v = a
    cdef double complex[:, ::1] h_v = h
    cdef double[::1] w_v = w
    cdef double complex[::1] work_v = work
    cdef double[::1] rwork_v = rwork
    cdef double[::1] g_v = g
    cdef int info = 0, k
    cdef double step = TWO_PI / m
    for k in range(m):
        g_v[k] = _herm_lmax(n, &a_v[0, 0], step * k, &h_v[0, 0],
                            &work_v[0], lwork, &w_v[0], &rwork_v[0], &info)
    candidates = [
        k
        for k in range(m)
        if g[k] >= g[k - 1]
        and g[k] >= g[(k + 1) % m]
        and (g[k] > g[k - 1] or g[k] > g[(k + 1) % m])
    ]
    if not candidates:
        candidates = [int(np.argmax(g))]
    cdef double best_val = -np.inf
    cdef double best_theta = 0.0
    cdef double val, theta
    for k in candidates:
        val = _golden_max(n, &a_v[0, 0], step * k - step, step * k + step,
                          &h_v[0, 0], &work_v[0], lwork, &w_v[0], &rwork_v[0],
                          &info, &theta)
        if g_v[k] > val:
            val = g_v[k]
            theta = step * k
        if val > best_val:
            best_val = val
            best_theta = theta
    return best_val, best_theta


def numerical_radius(a, coarse=64, tol=1e-10):
    return numerical_radius_arg(a, coarse, tol)[0]


def blaschke_radius(phi, roots, constant=1.0 + 0.0j, coarse=64, tol=1e-10):
    return numerical_radius(blaschke_matrix(phi, roots, constant), coarse, tol)


def norm_objective(phi, u):
    """Largest singular value of the Blaschke product with tanh-parametrized roots."""
    phi = np.ascontiguousarray(phi, dtype=complex)
    u = np.ascontiguousarray(u, dtype=float).ravel()
    cdef int n = phi.shape[0]
    cdef int d = u.size // 2
    cdef int lwork = _svd_lwork(n)
    roots = np.empty(d, dtype=complex)
    p = np.empty((n, n), dtype=complex)
    q = np.empty((n, n), dtype=complex)
    f = np.empty((n, n), dtype=complex)
    t = np.empty((n, n), dtype=complex)
    s = np.empty(n, dtype=float)
    work = np.empty(lwork, dtype=complex)
    rwork = np.empty(5 * n, dtype=float)
    ipiv = np.empty(n, dtype=np.intc)
    cdef double complex[:, ::1] phi_v = phi
    cdef double[::1] u_v = u
    cdef double complex[::1] roots_v = roots
    cdef double complex[:, ::1] p_v = p
    cdef double complex[:, ::1] q_v = q
    cdef double complex[:, ::1] f_v = f
    cdef double complex[:, ::1] t_v = t
    cdef double[::1] s_v = s
    cdef double complex[::1] work_v = work
    cdef double[::1] rwork_v = rwork
    cdef int[::1] ipiv_v = ipiv
    cdef int k
    cdef double mag, scale
    for k in range(d):
        mag = hypot(u_v[2 * k], u_v[2 * k + 1])
        scale = tanh(mag) / mag if mag > 0 else 1.0
        roots_v[k] = (u_v[2 * k] + 1j * u_v[2 * k + 1]) * scale
    cdef double complex* roots_ptr = NULL
    if d > 0:
        roots_ptr = &roots_v[0]
    cdef int info = _blaschke_build(n, &phi_v[0, 0], d, roots_ptr, 1.0,
                                    &p_v[0, 0], &q_v[0, 0], &f_v[0, 0], &t_v[0, 0],
                                    &ipiv_v[0])
    if info != 0:
        raise np.linalg.LinAlgError(f"zgesv failed with info={info}")
    cdef double out = _sigma_max(n, &p_v[0, 0], &work_v[0], lwork, &s_v[0], &rwork_v[0], &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"zgesvd failed with info={info}")
    return out


def radius_objective(phi, u, coarse=64, tol=1e-10):
    """Numerical radius of the Blaschke product with tanh-parametrized roots."""
    return numerical_radius(blaschke_matrix(phi, params_to_roots(u)), coarse, tol)
