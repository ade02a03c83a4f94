import numpy as np
import pytest

from conftest import random_complex_gaussian, rng_for
from crouzeix_lab.conformal_map import boundary_derivative_abs, build_map, map_interior
from crouzeix_lab.errors import CenterOutside, FlatBoundary, TooCloseToBoundary
from crouzeix_lab.matrix_functions import crabb_matrix
from crouzeix_lab.numerical_range import boundary_from_function, range_boundary


def ellipse_boundary(m=256, a=1.0, b=0.6):
    return boundary_from_function(lambda t: a * np.cos(t) + 1j * b * np.sin(t), m)


def test_unit_circle_routes_to_identity():
    boundary = boundary_from_function(lambda t: np.exp(1j * t), 128)
    m = build_map(boundary, center=0.0)
    assert m.kind == "identity"
    z = 0.3 - 0.2j
    assert map_interior(m, z) == z
    assert np.all(boundary_derivative_abs(m) == 1.0)


def test_circle_routes_to_scale():
    r = 0.75
    boundary = boundary_from_function(lambda t: r * np.exp(1j * t), 128)
    m = build_map(boundary, center=0.0)
    assert m.kind == "scale"
    assert m.scale_radius == pytest.approx(r, abs=1e-12)
    assert map_interior(m, 0.3) == pytest.approx(0.3 / r, abs=1e-12)
    assert np.allclose(boundary_derivative_abs(m), 1.0 / r)


def test_crabb_range_routes_to_exact_map():
    boundary = range_boundary(crabb_matrix(3), 128)
    m = build_map(boundary, center=0.0)
    assert m.kind in ("identity", "scale")


def test_off_center_circle_routes_to_moebius():
    c, r = 0.4 + 0.2j, 0.5
    boundary = boundary_from_function(lambda t: c + r * np.exp(1j * t), 128)
    m = build_map(boundary, center=c)
    assert m.kind == "moebius"
    assert m.forward_unchecked(c) == pytest.approx(0.0, abs=1e-12)
    # boundary goes to the unit circle
    assert np.max(np.abs(np.abs(m.phi_at_nodes) - 1.0)) < 1e-12
    # round trip
    z = c + 0.3 * r
    assert m.inverse(m.forward_unchecked(z)) == pytest.approx(z, abs=1e-12)


def test_moebius_center_normalization_derivative_positive():
    c, r = 0.4 + 0.2j, 0.5
    boundary = boundary_from_function(lambda t: c + r * np.exp(1j * t), 128)
    center = c + 0.2 * r
    m = build_map(boundary, center=center)
    assert m.forward_unchecked(center) == pytest.approx(0.0, abs=1e-12)
    h = 1e-6
    deriv = (m.forward_unchecked(center + h) - m.forward_unchecked(center - h)) / (2 * h)
    assert deriv.imag == pytest.approx(0.0, abs=1e-6)
    assert deriv.real > 0


def test_ellipse_numeric_map_quality():
    m = build_map(ellipse_boundary(), center=0.0)
    assert m.kind == "numeric"
    assert np.max(np.abs(np.abs(m.phi_at_nodes) - 1.0)) < 1e-6
    assert m.forward_unchecked(0.0) == pytest.approx(0.0, abs=1e-8)
    rng = rng_for(90)
    z = rng.uniform(-0.55, 0.55, 100) + 1j * rng.uniform(-0.3, 0.3, 100)
    w = m.forward_unchecked(z)
    assert np.all(np.abs(w) < 1.0)
    assert np.max(np.abs(m.inverse(w) - z)) < 1e-6


def test_ellipse_derivative_normalization_positive():
    m = build_map(ellipse_boundary(), center=0.0)
    assert abs(np.angle(m.taylor[1])) < 1e-8


def test_ellipse_arclength_of_image():
    boundary = ellipse_boundary()
    m = build_map(boundary, center=0.0)
    deriv = boundary_derivative_abs(m)
    assert np.all(deriv > 0)
    circumference = np.sum(deriv * boundary.arc_elements())
    assert circumference == pytest.approx(2.0 * np.pi, abs=1e-6)


def test_ellipse_grid_refinement_stability():
    m1 = build_map(ellipse_boundary(256), center=0.0)
    m2 = build_map(ellipse_boundary(512), center=0.0)
    rng = rng_for(91)
    z = rng.uniform(-0.5, 0.5, 50) + 1j * rng.uniform(-0.25, 0.25, 50)
    assert np.max(np.abs(m1.forward_unchecked(z) - m2.forward_unchecked(z))) < 1e-6


def test_numeric_map_conformality_spot_check():
    m = build_map(ellipse_boundary(), center=0.0)
    rng = rng_for(92)
    pts = rng.uniform(-0.4, 0.4, 20) + 1j * rng.uniform(-0.2, 0.2, 20)
    h = 1e-5
    for z in pts:
        # Cauchy-Riemann: derivative along real and imaginary steps agree
        dx = (m.forward_unchecked(z + h) - m.forward_unchecked(z - h)) / (2 * h)
        dy = (m.forward_unchecked(z + 1j * h) - m.forward_unchecked(z - 1j * h)) / (2j * h)
        assert abs(dx - dy) < 1e-5 * max(1.0, abs(dx))


def test_numeric_map_random_range_boundary():
    rng = rng_for(93, 2)
    a = random_complex_gaussian(rng, 5)
    boundary = range_boundary(a, 256)
    center = complex(np.trace(a) / 5)
    m = build_map(boundary, center=center)
    assert m.kind == "numeric"
    assert np.max(np.abs(np.abs(m.phi_at_nodes) - 1.0)) < 1e-7
    assert m.forward_unchecked(center) == pytest.approx(0.0, abs=1e-9)


def test_numeric_map_gauge_normalization_off_centroid():
    # requested center away from the solve center: the automorphism gauge
    # must still pin phi(center) = 0 with phi'(center) real positive
    rng = rng_for(93, 5)
    a = random_complex_gaussian(rng, 5)
    boundary = range_boundary(a, 256)
    center = complex(np.trace(a) / 5)
    m = build_map(boundary, center=center)
    assert abs(m.forward_unchecked(center)) < 1e-9
    h = 1e-6
    deriv = (m.forward_unchecked(center + h) - m.forward_unchecked(center - h)) / (2 * h)
    assert abs(deriv.imag) < 1e-5 * abs(deriv)
    assert deriv.real > 0


def test_interior_margin_guard():
    boundary = ellipse_boundary()
    m = build_map(boundary, center=0.0)
    with pytest.raises(TooCloseToBoundary):
        map_interior(m, 0.999)
    with pytest.raises(TooCloseToBoundary):
        map_interior(m, 2.0)


def test_flat_boundary_rejected():
    a = np.diag([1.0, 1.0j, -1.0, -1.0j])
    boundary = range_boundary(a, 128)
    with pytest.raises(FlatBoundary):
        build_map(boundary, center=0.0)


def test_center_outside_rejected():
    with pytest.raises(CenterOutside):
        build_map(ellipse_boundary(), center=2.0 + 0.0j)


def test_scale_override_is_bit_exact():
    boundary = ellipse_boundary()
    m = build_map(boundary, kind="scale:0.5")
    assert m.kind == "scale"
    assert m.forward_unchecked(0.25) == 0.5
