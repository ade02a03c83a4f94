"""Compressed-shift matrices and their explicit eigenstructure.

For a degree-n Blaschke product with distinct zeros z_1..z_n, the
compression of the shift acts on an n-dimensional space with a canonical
orthonormal (Takenaka-Malmquist) basis.  This module builds its matrix
M in that basis, the closed-form eigenvector matrices X and X^-1, the
kernel Gramian, the condition-number bounds driven by the separation
constant, and the rational-vector model of the norm-attaining subspace.

The closed forms are the implementation; numerical eigendecomposition is
reserved for test oracles.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegreeTooLarge, OutOfRange, SeparationTooSmall
from .hyp_geometry import BlaschkeProduct, require_disk_point, require_distinct, separation_constant

MIN_DELTA = 1e-6


def _prepare_zeros(zeros):
    zeros = [require_disk_point(z, "zero") for z in zeros]
    if len(zeros) < 2:
        raise OutOfRange("need at least 2 zeros")
    require_distinct(zeros)
    return np.array(zeros, dtype=complex)


def _defect(z):
    """sqrt(1 - |z|^2), the normalization of a reproducing kernel at z."""
    return np.sqrt(1.0 - np.abs(z) ** 2)


def build_m_theta(zeros):
    """Upper-triangular matrix of the compressed shift in the TM basis.

    Diagonal z_i; entry (i, j) for i < j is
    prod_{k=i+1}^{j-1} (-conj(z_k)) * sqrt(1-|z_i|^2) sqrt(1-|z_j|^2),
    with the empty product equal to 1 when j = i + 1.
    """
    z = _prepare_zeros(zeros)
    n = z.size
    d = _defect(z)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        m[i, i] = z[i]
        for j in range(i + 1, n):
            m[i, j] = np.prod(-np.conj(z[i + 1 : j])) * d[i] * d[j]
    return m


def eigvec_matrices(zeros):
    """Closed-form eigenvector matrix X and its inverse, both unit upper triangular.

    Columns of X are eigenvectors of the compressed-shift matrix for the
    eigenvalues z_j:

        X[i, j]    = d_i d_j / (z_j - z_i) * prod_{k=i+1}^{j-1} (1 - conj(z_k) z_j)/(z_j - z_k)
        Xinv[i, j] = d_i d_j / (z_i - z_j) * prod_{k=i+1}^{j-1} (1 - conj(z_k) z_i)/(z_i - z_k)

    for i < j, with d_l = sqrt(1 - |z_l|^2) and empty products equal to 1.
    """
    z = _prepare_zeros(zeros)
    n = z.size
    d = _defect(z)
    x = np.eye(n, dtype=complex)
    xinv = np.eye(n, dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            inner = z[i + 1 : j]
            x[i, j] = (
                d[i]
                * d[j]
                / (z[j] - z[i])
                * np.prod((1.0 - np.conj(inner) * z[j]) / (z[j] - inner))
            )
            xinv[i, j] = (
                d[i]
                * d[j]
                / (z[i] - z[j])
                * np.prod((1.0 - np.conj(inner) * z[i]) / (z[i] - inner))
            )
    return x, xinv


def gramian(zeros):
    """Gramian of the normalized reproducing kernels at the zeros.

    G[i, j] = d_i d_j / (1 - conj(z_i) z_j); Hermitian positive
    semidefinite, with unit diagonal.
    """
    z = _prepare_zeros(zeros)
    d = _defect(z)
    return d[:, None] * d[None, :] / (1.0 - np.conj(z)[:, None] * z[None, :])


def lemma_tech_check(a, b):
    """Evaluate both sides of the telescoping product identity.

    For arbitrary complex a_1..a_m and b:

        sum_k (1-|a_k|^2) prod_{l>k} (1-conj(a_l) b) prod_{j<k} (|a_j|^2-conj(a_j) b)
          + prod_j (|a_j|^2 - conj(a_j) b)  =  prod_j (1 - conj(a_j) b).

    Returns (lhs, rhs, |lhs - rhs|).
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = complex(b)
    if a.size < 1:
        raise OutOfRange("need m >= 1 values")
    upper = 1.0 - np.conj(a) * b  # 1 - conj(a_j) b
    lower = np.abs(a) ** 2 - np.conj(a) * b  # |a_j|^2 - conj(a_j) b
    lhs = 0.0 + 0.0j
    for k in range(a.size):
        lhs += (1.0 - abs(a[k]) ** 2) * np.prod(upper[k + 1 :]) * np.prod(lower[:k])
    lhs += np.prod(lower)
    rhs = np.prod(upper)
    return complex(lhs), complex(rhs), abs(lhs - rhs)


@dataclass(frozen=True)
class ConditionReport:
    """Condition number of the eigenbasis against the separation-driven bounds.

    kappa_numeric and kappa_frobenius are the operator- and
    Frobenius-norm condition numbers of the column-normalized
    eigenvector matrix (the normalization under which the n/delta chain
    is stated); kappa_unit_triangular is the raw unit-diagonal closed
    form, which the 8/delta^6 bound addresses directly.
    """

    kappa_numeric: float
    kappa_frobenius: float
    bound_n_over_delta: float
    bound_delta6: float
    bound_rasmith_adjusted: float
    kappa_unit_triangular: float
    frobenius_intermediate: float
    delta: float
    n: int

    @property
    def flags(self):
        return {
            "kappa_le_n_over_delta": self.kappa_numeric <= self.bound_n_over_delta,
            "kappa_le_delta6": self.kappa_numeric <= self.bound_delta6,
            "kappa_le_rasmith": self.kappa_numeric <= self.bound_rasmith_adjusted,
        }

    def to_json(self):
        out = {
            "kappa_numeric": self.kappa_numeric,
            "kappa_frobenius": self.kappa_frobenius,
            "bound_n_over_delta": self.bound_n_over_delta,
            "bound_delta6": self.bound_delta6,
            "bound_rasmith_adjusted": self.bound_rasmith_adjusted,
            "kappa_unit_triangular": self.kappa_unit_triangular,
            "frobenius_intermediate": self.frobenius_intermediate,
            "delta": self.delta,
            "n": self.n,
        }
        out["flags"] = self.flags
        return out


def condition_report(zeros):
    """Numerical condition numbers of the eigenbasis and their a priori bounds.

    bound_n_over_delta = n/delta, bound_delta6 = (8/delta^6)(1 - 2 ln delta),
    and bound_rasmith_adjusted solves kappa + 1/kappa <= n/delta - n + 2
    for kappa (the operator/Frobenius condition-number gap inequality).
    """
    z = _prepare_zeros(zeros)
    n = z.size
    sep = separation_constant(z)
    delta = sep.delta
    if delta < MIN_DELTA:
        raise SeparationTooSmall(f"separation {delta} below {MIN_DELTA}; bounds overflow")
    x, xinv = eigvec_matrices(z)
    col_norms = np.linalg.norm(x, axis=0)
    xhat = x / col_norms[None, :]
    xhat_inv = xinv * col_norms[:, None]
    kappa_unit = kernels.spectral_norm(x) * kernels.spectral_norm(xinv)
    kappa_num = kernels.spectral_norm(xhat) * kernels.spectral_norm(xhat_inv)
    kappa_fro = np.linalg.norm(xhat, "fro") * np.linalg.norm(xhat_inv, "fro")
    per_point = np.array(sep.per_point_deltas)
    intermediate = np.sqrt(n) * np.sqrt(np.sum(1.0 / per_point**2))
    s = n / delta - n + 2.0
    rasmith = 0.5 * (s + np.sqrt(s * s - 4.0))
    return ConditionReport(
        kappa_numeric=float(kappa_num),
        kappa_frobenius=float(kappa_fro),
        bound_n_over_delta=float(n / delta),
        bound_delta6=float(8.0 / delta**6 * (1.0 - 2.0 * np.log(delta))),
        bound_rasmith_adjusted=float(rasmith),
        kappa_unit_triangular=float(kappa_unit),
        frobenius_intermediate=float(intermediate),
        delta=float(delta),
        n=int(n),
    )


@dataclass(frozen=True)
class ModelSpaceSystem:
    """Zeros plus the derived shift matrix, eigenstructure, and separation data."""

    zeros: tuple
    m_theta: np.ndarray
    lam: np.ndarray
    x_mat: np.ndarray
    x_inv: np.ndarray
    separation: object

    @classmethod
    def from_zeros(cls, zeros):
        z = _prepare_zeros(zeros)
        x, xinv = eigvec_matrices(z)
        return cls(
            zeros=tuple(z.tolist()),
            m_theta=build_m_theta(z),
            lam=np.diag(z),
            x_mat=x,
            x_inv=xinv,
            separation=separation_constant(z),
        )

    @property
    def n(self):
        return len(self.zeros)

    @property
    def action(self):
        """Matrix acting on TM coordinate columns.

        Row i of m_theta holds the expansion of the shifted i-th basis
        function, so coordinate columns transform under the transpose.
        Singular values (hence every norm statement) are unaffected;
        vector-level identities must use this matrix.
        """
        return self.m_theta.T


@dataclass(frozen=True)
class ModelVector:
    """Element q(z) / prod_i (1 - conj(z_i) z) of the model space.

    numerator_coeffs are ascending powers of q, length <= n.
    """

    numerator_coeffs: tuple
    zeros: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.numerator_coeffs)
        if len(coeffs) > len(self.zeros):
            raise OutOfRange("numerator degree must stay below the model-space dimension")
        object.__setattr__(self, "numerator_coeffs", coeffs)
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        num = np.zeros_like(z)
        for c in reversed(self.numerator_coeffs):
            num = num * z + c
        den = np.ones_like(z)
        for zi in self.zeros:
            den = den * (1.0 - np.conj(zi) * z)
        out = num / den
        if out.ndim == 0:
            return complex(out)
        return out


def tm_basis_values(zeros, points):
    """Matrix of Takenaka-Malmquist basis values, shape (len(points), n)."""
    z = np.asarray(zeros, dtype=complex)
    pts = np.asarray(points, dtype=complex)
    n = z.size
    vals = np.empty((pts.size, n), dtype=complex)
    partial = np.ones(pts.size, dtype=complex)
    for k in range(n):
        vals[:, k] = partial * _defect(z[k]) / (1.0 - np.conj(z[k]) * pts)
        partial = partial * (pts - z[k]) / (1.0 - np.conj(z[k]) * pts)
    return vals


def tm_coordinates(vector):
    """Coordinates of a model vector in the TM basis.

    Solved from values on a 2n-point uniform circle grid (the system is
    consistent, least squares just absorbs roundoff); the Euclidean norm
    of the result is the H^2 norm because the basis is orthonormal.
    """
    zeros = np.asarray(vector.zeros, dtype=complex)
    n = zeros.size
    grid = np.exp(2j * np.pi * np.arange(2 * n) / (2 * n))
    design = tm_basis_values(zeros, grid)
    rhs = vector(grid)
    coords, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    return coords


def model_vector_h2_norm(vector):
    """H^2 norm via the orthonormal-coordinate expansion."""
    return float(np.linalg.norm(tm_coordinates(vector)))


def extremal_vector_basis(system, product):
    """Basis of the subspace on which a sub-degree Blaschke product acts isometrically.

    For deg B = J < n the norm-attaining vectors are exactly
    p(z) prod_j (1 - conj(a_j) z) / prod_i (1 - conj(z_i) z) with
    deg p < n - J; the returned vectors take p = z^s, s = 0..n-J-1.
    """
    if not isinstance(product, BlaschkeProduct):
        raise OutOfRange("expected a BlaschkeProduct")
    n = system.n
    j = product.degree
    if j >= n:
        raise DegreeTooLarge(f"deg B = {j} must be below deg Theta = {n}")
    base = np.array([1.0 + 0.0j])
    for a in product.roots:
        base = np.convolve(base, np.array([1.0, -np.conj(a)]))
    vectors = []
    for s in range(n - j):
        coeffs = np.concatenate([np.zeros(s, dtype=complex), base])
        vectors.append(ModelVector(numerator_coeffs=tuple(coeffs), zeros=system.zeros))
    return vectors
