import numpy as np
import pytest

from conftest import random_complex_gaussian, random_disk_points, rng_for, seeded_zero_set
from crouzeix_lab import kernels
from crouzeix_lab.errors import (
    IllConditionedEigenbasis,
    OutOfRange,
    SpectrumTooCloseToBoundary,
    ZeroFunction,
)
from crouzeix_lab.hyp_geometry import BlaschkeProduct, earl_bound, separation_constant
from crouzeix_lab.matrix_functions import (
    BoundaryValueTable,
    apply_function,
    apply_function_contour,
    apply_function_diag,
    cauchy_transform_conjugate,
    cauchy_transform_interior,
    crabb_conjugation_factors,
    crabb_matrix,
    crouzeix_ratio,
    function_from_spec,
    li_disk_radius,
    li_matrix,
    polynomial_at_matrix,
    stronger_conjecture_check,
    sup_abs_poly_on_circle,
    tilde_constant,
)
from crouzeix_lab.model_space import ModelSpaceSystem
from crouzeix_lab.numerical_range import boundary_from_function, numerical_radius, range_boundary

unit_circle = lambda m=256: boundary_from_function(lambda t: np.exp(1j * t), m)


def test_diag_route_identity_function(rng):
    a = random_complex_gaussian(rng, 4)
    out = apply_function_diag(lambda z: z, a)
    assert np.max(np.abs(out.value - a)) < 1e-10


def test_diag_route_square(rng):
    a = random_complex_gaussian(rng, 4)
    out = apply_function_diag(lambda z: z * z, a)
    assert np.max(np.abs(out.value - a @ a)) < 1e-9


def test_diag_route_normal_contraction_bound(rng):
    eigs = random_disk_points(rng, 5, 0.9)
    q, _ = np.linalg.qr(random_complex_gaussian(rng, 5))
    a = q @ np.diag(eigs) @ q.conj().T
    b = BlaschkeProduct(roots=(0.3, -0.2j))
    out = apply_function_diag(b, a)
    assert kernels.spectral_norm(out.value) <= 1.0 + 1e-10


def test_diag_route_rejects_jordan():
    with pytest.raises(IllConditionedEigenbasis):
        apply_function_diag(lambda z: z, np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_contour_constant_gives_identity():
    a = 0.3 * crabb_matrix(3)
    out = apply_function_contour(np.ones(256), a, unit_circle())
    assert np.max(np.abs(out.value - np.eye(3))) < 1e-10


def test_contour_cube_on_crabb():
    a = crabb_matrix(4)
    boundary = boundary_from_function(lambda t: 1.5 * np.exp(1j * t), 256)
    out = apply_function_contour(lambda z: z**3, a, boundary)
    assert np.max(np.abs(out.value - a @ a @ a)) < 1e-9


def test_contour_blaschke_matches_moebius_factors():
    z = seeded_zero_set(401, 0, 4)
    system = ModelSpaceSystem.from_zeros(z)
    action = np.ascontiguousarray(system.action)
    b = BlaschkeProduct(roots=(0.4, -0.1 + 0.2j), constant=np.exp(0.9j))
    out = apply_function_contour(b, action, unit_circle())
    direct = kernels.blaschke_matrix(action, b.root_array(), b.constant)
    assert np.max(np.abs(out.value - direct)) < 1e-8


def test_contour_rejects_spectrum_near_contour():
    a = np.diag([0.999, 0.1]).astype(complex)
    with pytest.raises(SpectrumTooCloseToBoundary):
        apply_function_contour(np.ones(64), a, unit_circle(64))


def test_route_agreement(rng):
    a = 0.5 * random_complex_gaussian(rng, 4)
    b = BlaschkeProduct(roots=(0.2, 0.1j))
    out = apply_function(b, a, unit_circle(), route="both")
    norm = kernels.spectral_norm(out.value)
    assert out.route_agreement <= 1e-7 * (1.0 + norm)


def test_cauchy_conjugate_of_constant():
    c = 0.4 - 0.7j
    g = cauchy_transform_conjugate(lambda z: np.full_like(z, c), unit_circle())
    assert np.max(np.abs(g - np.conj(c))) < 1e-10


def test_cauchy_conjugate_of_z_vanishes():
    g = cauchy_transform_conjugate(lambda z: z, unit_circle())
    assert np.max(np.abs(g)) < 1e-10


def test_cauchy_conjugate_fourier_oracle():
    # conj(z^2) on the circle is z^{-2}: no analytic part, so K kills it;
    # conj(3 + 2z) keeps only the constant
    boundary = unit_circle()
    g = cauchy_transform_conjugate(lambda z: 3.0 + 2.0 * z + z * z, boundary)
    assert np.max(np.abs(g - 3.0)) < 1e-9


def test_cauchy_conjugate_linearity():
    boundary = unit_circle()
    f1 = lambda z: z + 0.5
    f2 = lambda z: 1j * z * z - 0.2
    lhs = cauchy_transform_conjugate(lambda z: f1(z) + f2(z), boundary)
    rhs = cauchy_transform_conjugate(f1, boundary) + cauchy_transform_conjugate(f2, boundary)
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_cauchy_conjugate_interior_consistent_with_boundary_limit():
    boundary = unit_circle()
    f = lambda z: z * z + 0.3 * z
    inner = cauchy_transform_interior(f, boundary, np.array([0.95]))
    edge = cauchy_transform_conjugate(f, boundary)
    # interior values approach the boundary trace near the contour
    assert abs(inner[0] - edge[0]) < 0.05


def test_stronger_conjecture_normal_case(rng):
    eigs = random_disk_points(rng, 4, 0.6)
    q, _ = np.linalg.qr(random_complex_gaussian(rng, 4))
    a = q @ np.diag(eigs) @ q.conj().T
    b = BlaschkeProduct(roots=(0.25, -0.3j))
    report = stronger_conjecture_check(b, a, unit_circle())
    assert report.lhs <= 1.0 + 1e-8
    assert report.holds_cp


def test_stronger_conjecture_crabb_attains_two():
    n = 3
    a = crabb_matrix(n)
    boundary = boundary_from_function(lambda t: (1.0 + 1e-3) * np.exp(1j * t), 512)
    report = stronger_conjecture_check(lambda z: z ** (n - 1), a, boundary)
    assert report.lhs == pytest.approx(2.0, abs=1e-2)
    assert report.two_sup == pytest.approx(2.0, abs=5e-3)
    assert report.holds_cp


def test_stronger_conjecture_random_contractions_hold_cp():
    for k in range(25):
        rng = rng_for(402, k)
        a = random_complex_gaussian(rng, 3)
        a = 0.75 * a / np.linalg.norm(a, 2)
        roots = tuple(random_disk_points(rng, 2, 0.7))
        b = BlaschkeProduct(roots=roots)
        report = stronger_conjecture_check(b, a, unit_circle())
        assert report.holds_cp


def test_crouzeix_ratio_normal(rng):
    eigs = random_disk_points(rng, 4, 0.8)
    q, _ = np.linalg.qr(random_complex_gaussian(rng, 4))
    a = q @ np.diag(eigs) @ q.conj().T
    ratio = crouzeix_ratio(a, lambda z: z * z + 0.1, unit_circle())
    assert ratio <= 1.0 + 1e-9


def test_crouzeix_ratio_jordan_block_equals_two():
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    boundary = range_boundary(a, 256)  # disk of radius 1/2
    ratio = crouzeix_ratio(a, lambda z: 2.0 * z, boundary)
    assert ratio == pytest.approx(2.0, abs=1e-8)


def test_crouzeix_ratio_zero_function_guard():
    a = 0.3 * crabb_matrix(3)
    with pytest.raises(ZeroFunction):
        crouzeix_ratio(a, lambda z: np.zeros_like(z), unit_circle())


def test_crouzeix_palencia_bound_on_random_suite():
    limit = 1.0 + np.sqrt(2.0) + 1e-6
    for k in range(20):
        rng = rng_for(403, k)
        a = random_complex_gaussian(rng, 3)
        a = 0.8 * a / np.linalg.norm(a, 2)
        roots = tuple(random_disk_points(rng, 2, 0.6))
        ratio = crouzeix_ratio(a, BlaschkeProduct(roots=roots), unit_circle())
        assert ratio <= limit


def test_tilde_constant_values():
    assert tilde_constant(1.0) == 1.0
    assert tilde_constant(2.0) == pytest.approx(1.25, abs=1e-15)
    assert tilde_constant(1.0 + np.sqrt(2.0)) == pytest.approx(np.sqrt(2.0), abs=1e-14)


def test_tilde_constant_domain():
    with pytest.raises(OutOfRange):
        tilde_constant(0.5)


def test_crabb_matrix_entries():
    c = crabb_matrix(3)
    sub = c[np.arange(1, 3), np.arange(2)]
    assert np.array_equal(sub, np.array([np.sqrt(2.0), np.sqrt(2.0)]))
    c5 = crabb_matrix(5)
    sub5 = c5[np.arange(1, 5), np.arange(4)]
    assert np.array_equal(sub5, np.array([np.sqrt(2.0), 1.0, 1.0, np.sqrt(2.0)]))


def test_crabb_two_by_two_convention():
    c = crabb_matrix(2)
    assert c[1, 0] == 2.0
    assert kernels.spectral_norm(c) == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_crabb_power_norm_is_two(n):
    c = crabb_matrix(n)
    assert kernels.spectral_norm(np.linalg.matrix_power(c, n - 1)) == pytest.approx(
        2.0, abs=1e-12
    )


def test_crabb_spectrum_is_zero():
    assert np.max(np.abs(np.linalg.eigvals(crabb_matrix(5)))) < 1e-8


@pytest.mark.parametrize("n", [3, 4, 6])
def test_crabb_conjugation_identity(n):
    c = crabb_matrix(n)
    d, j = crabb_conjugation_factors(n)
    assert np.array_equal(np.linalg.inv(d) @ j @ d, c)


def test_crabb_two_case_conjugation_within_ulp():
    c = crabb_matrix(2)
    d, j = crabb_conjugation_factors(2)
    assert np.max(np.abs(np.linalg.inv(d) @ j @ d - c)) < 5e-16


def test_li_matrix_displayed_entries():
    t = 0.3
    a = li_matrix(t)
    assert a[0, 1] == 1.0 and a[1, 2] == 1.0 - t
    assert np.count_nonzero(a) == 2


def test_li_matrix_limits():
    assert np.count_nonzero(li_matrix(1.0)) == 1  # rank one
    a0 = li_matrix(0.0)
    assert a0[1, 2] == 1.0


def test_li_radius_formula():
    for t in (0.0, 0.2, 0.6):
        assert numerical_radius(li_matrix(t)) == pytest.approx(li_disk_radius(t), abs=1e-8)


def test_li_matrix_domain():
    with pytest.raises(OutOfRange):
        li_matrix(1.5)


def test_sup_abs_poly_on_circle_exact_cases():
    assert sup_abs_poly_on_circle([0.0, 1.0]) == pytest.approx(1.0, abs=1e-12)
    assert sup_abs_poly_on_circle([1.0, 1.0]) == pytest.approx(2.0, abs=1e-12)
    # |1 + z^2| attains 2 as well
    assert sup_abs_poly_on_circle([1.0, 0.0, 1.0]) == pytest.approx(2.0, abs=1e-12)


def test_sup_abs_poly_matches_dense_sampling(rng):
    coeffs = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    dense = np.max(
        np.abs(
            np.polynomial.polynomial.polyval(
                np.exp(2j * np.pi * np.arange(200000) / 200000), coeffs
            )
        )
    )
    exact = sup_abs_poly_on_circle(coeffs)
    assert exact >= dense - 1e-12
    assert exact <= dense + 1e-6


def test_von_neumann_on_seeded_contractions():
    for k in range(100):
        rng = rng_for(404, k)
        a = random_complex_gaussian(rng, int(rng.integers(2, 6)))
        a = a / np.linalg.norm(a, 2)
        deg = int(rng.integers(1, 6))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        lhs = kernels.spectral_norm(polynomial_at_matrix(coeffs, a))
        assert lhs <= sup_abs_poly_on_circle(coeffs) + 1e-8


def test_interpolation_norm_bound_on_seeded_contractions():
    # ||f(A)|| <= M(delta) max |f| over the spectrum, for Blaschke f and
    # contractions with separated eigenvalues
    done = 0
    k = 0
    while done < 40:
        rng = rng_for(405, k)
        k += 1
        n = int(rng.integers(2, 6))
        a = random_complex_gaussian(rng, n)
        a = 0.95 * a / np.linalg.norm(a, 2)
        eigs = np.linalg.eigvals(a)
        if np.min(np.abs(eigs[:, None] - eigs[None, :]) + np.eye(n)) < 1e-3:
            continue
        delta = separation_constant(eigs).delta
        if delta < 0.05:
            continue
        roots = tuple(random_disk_points(rng, int(rng.integers(1, 4)), 0.8))
        b = BlaschkeProduct(roots=roots)
        fa = apply_function_diag(b, a).value
        bound = earl_bound(delta) * np.max(np.abs(b(eigs)))
        assert kernels.spectral_norm(fa) <= bound + 1e-7
        done += 1


def test_function_from_spec_blaschke():
    f = function_from_spec({"c_re": 1.0, "c_im": 0.0, "roots": [{"re": 0.5, "im": 0.0}]})
    assert isinstance(f, BlaschkeProduct)
    assert f(0.0) == pytest.approx(-0.5)


def test_function_from_spec_polynomial():
    f = function_from_spec([1.0, {"re": 0.0, "im": 2.0}])
    assert f(0.5) == pytest.approx(1.0 + 1.0j)


def test_function_from_spec_boundary_table():
    boundary = unit_circle(8)
    table = function_from_spec(
        {
            "theta": boundary.thetas.tolist(),
            "re": np.cos(boundary.thetas).tolist(),
            "im": np.sin(boundary.thetas).tolist(),
        }
    )
    assert isinstance(table, BoundaryValueTable)
    vals = table.values_for(boundary)
    assert np.allclose(vals, np.exp(1j * boundary.thetas))


def test_function_from_spec_rejects_garbage():
    with pytest.raises(OutOfRange):
        function_from_spec({"nope": 1})
