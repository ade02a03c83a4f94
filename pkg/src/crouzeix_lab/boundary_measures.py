"""Boundary representation measures of extremal vectors.

For a norm-extremal pair (f, x) the functional h -> <h(A)x, x> is
integration against a probability measure on the domain boundary whose
disk-side density is a resolvent expression in phi(A); its trigonometric
moments are exactly <phi(A)^n x, x>.  The radius-extremal analogue
represents h -> <h(A) f(A) y, y> with total mass w(f(A)) and
f-integral one.  Densities are evaluated by linear solves, never the
power series: extremal roots push the spectral radius of phi(A) close
to one where the series crawls.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SpectralRadiusTooLarge

SPECTRAL_MARGIN = 1e-6


@dataclass(frozen=True)
class MeasureDensity:
    """Disk-angle density samples plus quadrature weights on the boundary nodes."""

    theta_grid: np.ndarray
    rho_values: np.ndarray
    node_angles: np.ndarray  # arg phi(zeta_k) at the domain boundary nodes
    rho_at_nodes: np.ndarray
    mu_weights: np.ndarray
    total_mass: float


def _resolvent_rho(phi, x, angles):
    """rho(theta) = 2 Re <(I - e^{-i theta} phi)^{-1} x, x> - 1 by direct solves."""
    n = phi.shape[0]
    eye = np.eye(n)
    shifted = eye[None, :, :] - np.exp(-1j * angles)[:, None, None] * phi[None, :, :]
    sols = np.linalg.solve(shifted, np.broadcast_to(x, (angles.size, n))[..., None])
    inner = np.einsum("i,kij->kj", np.conj(x), sols)[:, 0]
    return 2.0 * np.real(inner) - 1.0


def rho_density(phi_of_a, x, m=256, the_map=None, boundary=None):
    """Resolvent density on the disk side plus induced boundary weights.

    With a map and boundary, the weight at node zeta_k is
    rho(arg phi(zeta_k)) |phi'(zeta_k)| |d zeta| / 2 pi, the disk-side
    density transported by the boundary correspondence; without them the
    domain is the disk itself and the weights are rho / m on the grid.
    """
    phi = np.asarray(phi_of_a, dtype=complex)
    x = np.asarray(x, dtype=complex)
    x = x / np.linalg.norm(x)
    radius = np.max(np.abs(np.linalg.eigvals(phi)))
    if radius >= 1.0 - SPECTRAL_MARGIN:
        raise SpectralRadiusTooLarge(f"spectral radius {radius} too close to 1")
    theta_grid = 2.0 * np.pi * np.arange(int(m)) / int(m)
    rho_values = _resolvent_rho(phi, x, theta_grid)
    if the_map is None or boundary is None:
        node_angles = theta_grid
        rho_nodes = rho_values
        weights = rho_values / float(m)
    else:
        node_angles = np.angle(the_map.phi_at_nodes)
        rho_nodes = _resolvent_rho(phi, x, node_angles)
        weights = rho_nodes * the_map.deriv_abs * boundary.arc_elements() / (2.0 * np.pi)
    return MeasureDensity(
        theta_grid=theta_grid,
        rho_values=rho_values,
        node_angles=node_angles,
        rho_at_nodes=rho_nodes,
        mu_weights=weights,
        total_mass=float(np.sum(weights)),
    )


def moment_check(density, phi_of_a, x, n_max=10):
    """max_n |trapezoid moment of rho - <phi^n x, x>| for n = 0..n_max."""
    phi = np.asarray(phi_of_a, dtype=complex)
    x = np.asarray(x, dtype=complex)
    x = x / np.linalg.norm(x)
    worst = 0.0
    power = x.copy()
    for n in range(n_max + 1):
        moment = np.mean(np.exp(1j * n * density.theta_grid) * density.rho_values)
        direct = complex(np.vdot(x, power))
        worst = max(worst, abs(moment - direct))
        power = phi @ power
    return worst


def representation_check(density, a, boundary, the_map, x, extremal=None, attained=None):
    """Pair <h(A)x, x> against the measure for a default holomorphic test set.

    Test functions: low-degree polynomials in z (matrix side evaluated
    by exact Horner, independent of any quadrature) and monomials in phi
    (matrix side from powers of phi(A)).  Returns the max deviation and,
    when the extremal product with attained norm above one is supplied,
    the absolute f-integral that the representation forces to vanish.
    """
    a = np.asarray(a, dtype=complex)
    x = np.asarray(x, dtype=complex)
    x = x / np.linalg.norm(x)
    worst = 0.0
    power = np.eye(a.shape[0], dtype=complex)
    for n in range(4):
        matrix_side = complex(np.vdot(x, power @ x))
        measure_side = complex(np.sum(boundary.nodes**n * density.mu_weights))
        worst = max(worst, abs(matrix_side - measure_side))
        power = power @ a
    from .extremal_search import phi_of_matrix

    phi_nodes = the_map.phi_at_nodes
    phi_mat = phi_of_matrix(a, the_map)
    power = np.eye(a.shape[0], dtype=complex)
    for n in range(4):
        matrix_side = complex(np.vdot(x, power @ x))
        measure_side = complex(np.sum(phi_nodes**n * density.mu_weights))
        worst = max(worst, abs(matrix_side - measure_side))
        power = power @ phi_mat
    f_integral = None
    if extremal is not None:
        f_nodes = extremal(phi_nodes)
        f_integral = abs(complex(np.sum(f_nodes * density.mu_weights)))
    return worst, f_integral


@dataclass(frozen=True)
class WMeasureReport:
    total_mass: complex  # c_0 = <f(A) y, y>, real positive in the fixed gauge
    radius: float  # w(f(A)) recomputed from the matrix
    f_integral: complex  # <f(A)^2 y, y>, equals 1 at a true optimum
    moments: np.ndarray
    min_truncated_density: float


def w_measure_check(result, n_moments=32, grid=512):
    """Moment identities of the radius-extremal representation measure.

    Builds the trigonometric moments c_n = <phi(A)^n f(A) y, y>, checks
    total mass against w(f(A)) and the f-integral against one, and
    reports the minimum of the Fejer-smoothed truncated density (the
    measure is positive; the truncation is this artifact's choice, so
    positivity is reported rather than asserted).
    """
    from . import kernels

    phi = result.phi_of_a
    y = result.vector
    product = result.product
    fm = kernels.blaschke_matrix(phi, product.root_array(), product.constant)
    moments = np.empty(n_moments + 1, dtype=complex)
    power = fm @ y
    for n in range(n_moments + 1):
        moments[n] = np.vdot(y, power)
        power = phi @ power
    radius = kernels.numerical_radius(fm)
    f_integral = complex(np.vdot(y, fm @ (fm @ y)))
    thetas = 2.0 * np.pi * np.arange(grid) / grid
    density = np.full(grid, np.real(moments[0]))
    for n in range(1, n_moments + 1):
        weight = 1.0 - n / (n_moments + 1.0)
        density += 2.0 * weight * np.real(moments[n] * np.exp(-1j * n * thetas))
    return WMeasureReport(
        total_mass=complex(moments[0]),
        radius=float(radius),
        f_integral=f_integral,
        moments=moments,
        min_truncated_density=float(np.min(density)),
    )
