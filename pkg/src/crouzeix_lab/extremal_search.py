"""Multistart search for norm- and radius-extremal Blaschke products.

The objective ||B(Phi)|| (or w(B(Phi))) is maximized over the roots of a
fixed-degree Blaschke product, with Phi the conformal image of the
matrix.  Roots are parametrized by a tanh radial map of the plane onto
the open disk, so the simplex optimizer runs unconstrained; roots pushed
against the unit circle degrade into unimodular constants and are
discounted by the degree rule.  Also here: the orthogonality residuals
of extremal pairs, the compressed-shift extremal suite, and the random
census over seeded dense matrices.
"""

import os
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .conformal_map import range_map
from .errors import (
    DegreeTooLarge,
    FactorizationMismatch,
    MapConvergenceError,
    MapDomainMismatch,
    OutOfRange,
)
from .hyp_geometry import BlaschkeProduct, blaschke_factorizations
from .matrix_functions import crabb_matrix  # noqa: F401  (re-exported benchmark entry)
from .model_space import extremal_vector_basis, tm_coordinates
from .numerical_range import spectrum_in_interior

DEGREE_THRESHOLD = 0.9999


@dataclass(frozen=True)
class SearchConfig:
    starts: int = 20
    seed: int = 0
    tol: float = 1e-7
    max_function_evals: int = None  # per start; default scales with dimension
    polish: bool = True
    radius_scan: int = 64


@dataclass(frozen=True)
class ExtremalResult:
    phi_of_a: np.ndarray
    roots: np.ndarray
    constant: complex
    attained: float
    vector: np.ndarray
    effective_degree: int
    mode: str  # norm | radius
    converged: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def product(self):
        inside = tuple(a for a in self.roots if abs(a) < 1.0 - 1e-14)
        boundary_phase = complex(np.prod([1.0] + [-a / abs(a) for a in self.roots if abs(a) >= 1.0 - 1e-14]))
        return BlaschkeProduct(roots=inside, constant=self.constant * boundary_phase)

    def to_json(self):
        return {
            "mode": self.mode,
            "attained": self.attained,
            "roots": [{"re": a.real, "im": a.imag} for a in self.roots],
            "constant": {"re": self.constant.real, "im": self.constant.imag},
            "effective_degree": self.effective_degree,
            "vector": [{"re": v.real, "im": v.imag} for v in self.vector],
            "converged": self.converged,
            "diagnostics": self.diagnostics,
        }


def detect_degree(roots, threshold=DEGREE_THRESHOLD):
    """Count roots that genuinely add degree (|alpha| <= threshold).

    Numerically converged roots hugging the unit circle act as
    unimodular constants; past the threshold they are discounted.
    """
    roots = np.atleast_1d(np.asarray(roots, dtype=complex))
    if np.any(np.abs(roots) > 1.0 + 1e-12):
        raise OutOfRange("roots must lie in the closed unit disk")
    return int(np.count_nonzero(np.abs(roots) <= threshold))


def phi_of_matrix(a, the_map, max_contour_nodes=4096):
    """Phi = phi(A) for the map kinds, exact where the map is exact.

    The numeric route integrates the resolvent against the map's
    boundary values; when an eigenvalue sits too close to the contour at
    the stored resolution, the same curve is re-swept finer and the map
    evaluated on the new nodes (valid because the map's domain is the
    numerical range of this matrix in the pipeline pairing).
    """
    from .matrix_functions import apply_function_contour
    from .numerical_range import range_boundary

    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    eye = np.eye(n)
    if the_map.kind == "identity":
        return a.copy()
    if the_map.kind == "scale":
        return a / the_map.scale_radius
    if the_map.kind == "moebius":
        u = (a - the_map.circle_center * eye) / the_map.scale_radius
        alpha = the_map.mobius_a
        num = u - alpha * eye
        den = eye - np.conj(alpha) * u
        return np.linalg.solve(den.T, num.T).T
    from .errors import SpectrumTooCloseToBoundary

    boundary = the_map.boundary
    values = the_map.phi_at_nodes
    while True:
        try:
            return apply_function_contour(values, a, boundary).value
        except SpectrumTooCloseToBoundary:
            if boundary.m * 2 > max_contour_nodes:
                raise
            boundary = range_boundary(a, boundary.m * 2)
            values = the_map.boundary_values(boundary.nodes)


def _initial_parameter_sets(phi, degree, config):
    """Deterministic multistart seeds: spectrum-derived roots plus disk noise."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(int(config.seed), 7001)))
    eigs = np.linalg.eigvals(phi)
    eigs = eigs[np.argsort(-np.abs(eigs))]
    inits = []
    for s in range(config.starts):
        if s == 0:
            roots = np.zeros(degree, dtype=complex)
        elif s == 1 and eigs.size:
            roots = np.array([eigs[k % eigs.size] for k in range(degree)])
        elif s == 2 and eigs.size:
            roots = np.conj(np.array([eigs[k % eigs.size] for k in range(degree)]))
        else:
            radius = 0.92 * np.sqrt(rng.uniform(0.0, 1.0, degree))
            roots = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, degree))
        roots = np.clip(np.abs(roots), 0.0, 0.97) * np.exp(1j * np.angle(roots))
        inits.append(kernels.roots_to_params(roots))
    return inits


def _coordinate_polish(objective, u, steps=(1e-3, 1e-4, 1e-5, 1e-6, 1e-7)):
    """Greedy pattern sweep; returns the refined point and the last gain."""
    best = objective(u)
    u = u.copy()
    last_gain = 0.0
    for h in steps:
        improved = True
        while improved:
            improved = False
            for k in range(u.size):
                for sign in (1.0, -1.0):
                    trial = u.copy()
                    trial[k] += sign * h
                    val = objective(trial)
                    if val > best + 1e-15:
                        last_gain = val - best
                        best, u = val, trial
                        improved = True
    return u, best, last_gain


def _search(phi, degree, config, objective):
    phi = np.ascontiguousarray(phi, dtype=complex)
    maxfev = config.max_function_evals or 250 * (2 * degree + 1)

    def run_start(pair):
        index, u0 = pair
        res = minimize(
            lambda u: -objective(u),
            u0,
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-12, "maxfev": maxfev},
        )
        return (-res.fun, index, res.x, bool(res.success))

    starts = list(enumerate(_initial_parameter_sets(phi, degree, config)))
    workers = thread_count()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates = list(pool.map(run_start, starts))
    else:
        candidates = [run_start(pair) for pair in starts]
    # winner by (attained, start index): deterministic under ties
    candidates.sort(key=lambda item: (-item[0], item[1]))
    attained, index, u_best, nm_ok = candidates[0]
    # restart shrinkage: fresh simplex about the winner, then pattern polish
    res = minimize(
        lambda u: -objective(u),
        u_best,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-13, "maxfev": maxfev},
    )
    if -res.fun >= attained:
        attained, u_best = -res.fun, res.x
    gain = 0.0
    if config.polish:
        u_best, attained, gain = _coordinate_polish(objective, u_best)
    converged = bool(nm_ok or gain <= config.tol)
    return u_best, float(attained), index, converged, gain


def _check_domain(a, the_map):
    inside, _ = spectrum_in_interior(a, the_map.boundary)
    if not inside:
        raise MapDomainMismatch("spectrum is not strictly inside the map's domain")


def optimize_norm(a, the_map, degree=None, config=SearchConfig()):
    """Maximize the largest singular value of B(phi(A)) over degree-d roots."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if degree is None:
        degree = n - 1
    if degree > n - 1:
        raise DegreeTooLarge(f"degree {degree} exceeds n-1 = {n - 1}")
    _check_domain(a, the_map)
    phi = np.ascontiguousarray(phi_of_matrix(a, the_map))

    def objective(u):
        return kernels.norm_objective(phi, u)

    u_best, attained, start_index, converged, gap = _search(phi, degree, config, objective)
    roots = kernels.params_to_roots(u_best)
    bm = kernels.blaschke_matrix(phi, roots)
    _, svals, vh = np.linalg.svd(bm)
    vector = vh[0].conj()
    result = ExtremalResult(
        phi_of_a=phi,
        roots=roots,
        constant=1.0 + 0.0j,
        attained=attained,
        vector=vector,
        effective_degree=detect_degree(roots),
        mode="norm",
        converged=converged,
        diagnostics={
            "winning_start": start_index,
            "starts_used": config.starts,
            "local_optimality_gap": gap,
            "singular_value_check": float(svals[0]),
        },
    )
    residual = orthogonality_residual_max(result)
    result.diagnostics["orthogonality_residual"] = residual
    return result


def optimize_radius(a, the_map, degree=None, config=SearchConfig()):
    """Maximize the numerical radius of B(phi(A)) over degree-d roots.

    The unimodular constant of the winning product is rotated so that
    <f(A) y, y> is real positive at the attaining vector y (the gauge in
    which the w-measure identities are stated).
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if degree is None:
        degree = n - 1
    if degree > n - 1:
        raise DegreeTooLarge(f"degree {degree} exceeds n-1 = {n - 1}")
    _check_domain(a, the_map)
    phi = np.ascontiguousarray(phi_of_matrix(a, the_map))
    scan, tol = config.radius_scan, 1e-10

    def objective(u):
        return kernels.radius_objective(phi, u, scan, tol)

    u_best, attained, start_index, converged, gap = _search(phi, degree, config, objective)
    roots = kernels.params_to_roots(u_best)
    bm = kernels.blaschke_matrix(phi, roots)
    w_val, theta = kernels.numerical_radius_arg(bm, scan, tol)
    rotated = np.exp(-1j * theta) * bm
    herm = 0.5 * (rotated + rotated.conj().T)
    _, vecs = np.linalg.eigh(herm)
    y = vecs[:, -1]
    inner = complex(np.vdot(y, bm @ y))
    constant = np.conj(inner) / abs(inner)
    result = ExtremalResult(
        phi_of_a=phi,
        roots=roots,
        constant=complex(constant),
        attained=attained,
        vector=y,
        effective_degree=detect_degree(roots),
        mode="radius",
        converged=converged,
        diagnostics={
            "winning_start": start_index,
            "starts_used": config.starts,
            "local_optimality_gap": gap,
            "radius_check": float(w_val),
            "support_angle": float(theta),
        },
    )
    residual = w_orthogonality_residual_max(result)
    result.diagnostics["w_orthogonality_residual"] = residual
    return result


def _result_matrix(result, product):
    return kernels.blaschke_matrix(
        result.phi_of_a, product.root_array(), product.constant
    )


def _validate_split(result, pair):
    f1, f2 = pair
    combined = np.sort_complex(np.concatenate([f1.root_array(), f2.root_array()]))
    target = np.sort_complex(result.product.root_array())
    if combined.size != target.size or (
        combined.size and np.max(np.abs(combined - target)) > 1e-9
    ):
        raise FactorizationMismatch("factor roots do not multiply back to the product")
    if abs(f1.constant * f2.constant - result.product.constant) > 1e-9:
        raise FactorizationMismatch("factor constants do not multiply back")
    return f1, f2


def orthogonality_check(result, pair):
    """|<f1(A) x, (||f(A)||^2 I - f2(A)* f2(A)) x>| for a factor split of f.

    Vanishes at exact norm-extremal pairs; the residual measures
    first-order optimality of the computed optimum.
    """
    if result.mode != "norm":
        raise OutOfRange("orthogonality check applies to norm-mode results")
    f1, f2 = _validate_split(result, pair)
    x = result.vector
    f1m = _result_matrix(result, f1)
    f2m = _result_matrix(result, f2)
    norm2 = result.attained**2
    # <f1 x, x> = x^H f1 x and <f1 x, f2* f2 x> = (f2 x)^H f2 f1 x
    lhs = norm2 * complex(np.vdot(x, f1m @ x))
    rhs = complex(np.vdot(f2m @ x, f2m @ (f1m @ x)))
    return abs(lhs - rhs)


def w_orthogonality_check(result, pair):
    """|<f1(A) f(A) y, y> - <y, f2(A) y>| for a factor split of f."""
    if result.mode != "radius":
        raise OutOfRange("w-orthogonality check applies to radius-mode results")
    f1, f2 = _validate_split(result, pair)
    y = result.vector
    fm = _result_matrix(result, result.product)
    f1m = _result_matrix(result, f1)
    f2m = _result_matrix(result, f2)
    lhs = complex(np.vdot(y, f1m @ (fm @ y)))
    rhs = complex(np.vdot(f2m @ y, y))
    return abs(lhs - rhs)


def orthogonality_residual_max(result):
    """Largest orthogonality residual over all factor splits."""
    splits = blaschke_factorizations(result.product)
    return max(orthogonality_check(result, pair) for pair in splits)


def w_orthogonality_residual_max(result):
    splits = blaschke_factorizations(result.product)
    return max(w_orthogonality_check(result, pair) for pair in splits)


@dataclass(frozen=True)
class CensusRow:
    dimension: int
    sample_index: int
    seed: int
    effective_degree: int
    attained_norm: float
    crouzeix_ratio: float
    failure: str = ""


def degree_census(n, samples, seed, config=SearchConfig()):
    """Seeded random-matrix census of apparent extremal degrees.

    Each sample draws a standard complex Gaussian matrix, maps its
    numerical range to the disk, and searches at full degree n-1;
    the recorded degree discounts boundary-hugging roots.  Rows are
    deterministic functions of (n, samples, seed, starts).
    """
    rows = []
    for index in range(int(samples)):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), int(index))))
        a = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
        try:
            boundary, the_map = range_map(a)
            row_config = replace(config, seed=int(seed) * 100003 + index)
            result = optimize_norm(a, the_map, n - 1, row_config)
            f_boundary = np.abs(result.product(the_map.phi_at_nodes))
            ratio = result.attained / float(np.max(f_boundary))
            rows.append(
                CensusRow(
                    dimension=n,
                    sample_index=index,
                    seed=int(seed),
                    effective_degree=result.effective_degree,
                    attained_norm=result.attained,
                    crouzeix_ratio=ratio,
                )
            )
        except (MapConvergenceError, MapDomainMismatch) as exc:
            rows.append(
                CensusRow(
                    dimension=n,
                    sample_index=index,
                    seed=int(seed),
                    effective_degree=-1,
                    attained_norm=float("nan"),
                    crouzeix_ratio=float("nan"),
                    failure=type(exc).__name__,
                )
            )
    return rows


@dataclass(frozen=True)
class ShiftExtremalReport:
    norm_value: float
    basis_errors: list
    complement_gap: float

    @property
    def norm_is_unimodular(self):
        return abs(self.norm_value - 1.0) <= 1e-8


def shift_extremal_suite(system, product, seed=0):
    """Norm and extremal-subspace checks for a sub-degree product at M_Theta.

    Verifies ||B(M)|| = 1, that every characterized subspace basis vector
    attains the norm, and that a seeded unit vector orthogonal to the
    subspace contracts strictly.
    """
    n = system.n
    if product.degree >= n:
        raise DegreeTooLarge("product degree must stay below the shift degree")
    action = np.ascontiguousarray(system.action)
    bm = kernels.blaschke_matrix(action, product.root_array(), product.constant)
    norm_value = kernels.spectral_norm(bm)
    basis = extremal_vector_basis(system, product)
    coords = np.array([tm_coordinates(v) for v in basis]).T
    basis_errors = [
        abs(float(np.linalg.norm(bm @ c)) / float(np.linalg.norm(c)) - 1.0)
        for c in coords.T
    ]
    if product.degree == 0:
        # the subspace is all of the model space: no complement to test
        complement_gap = np.inf
    else:
        q, _ = np.linalg.qr(coords)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), 4242)))
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = x - q @ (q.conj().T @ x)
        x = x / np.linalg.norm(x)
        complement_gap = 1.0 - float(np.linalg.norm(bm @ x))
    return ShiftExtremalReport(
        norm_value=float(norm_value),
        basis_errors=basis_errors,
        complement_gap=complement_gap,
    )


def thread_count():
    """Worker cap from CRX_THREADS (defaults to serial execution)."""
    raw = os.environ.get("CRX_THREADS", "").strip()
    if not raw:
        return 1
    return max(1, int(raw))
