import numpy as np
import pytest

from conftest import random_complex_gaussian, rng_for
from crouzeix_lab.errors import OutOfRange
from crouzeix_lab.matrix_functions import crabb_matrix, li_disk_radius, li_matrix
from crouzeix_lab.numerical_range import (
    _distance_to_polyline,
    boundary_from_function,
    numerical_radius,
    range_boundary,
    range_report,
    spectrum_in_interior,
)


def _hull_distance(point, vertices):
    return _distance_to_polyline(point, np.asarray(vertices, dtype=complex))


def test_normal_matrix_square_hull():
    a = np.diag([1.0, 1.0j, -1.0, -1.0j])
    boundary = range_boundary(a, 256)
    corners = np.array([1.0, 1.0j, -1.0, -1.0j])
    # every node sits on the hull boundary, every corner is hit
    for node in boundary.nodes:
        assert _hull_distance(node, corners) < 1e-8
    for corner in corners:
        assert np.min(np.abs(boundary.nodes - corner)) < 1e-8
    assert not boundary.strictly_convex


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_crabb_range_is_unit_circle(n):
    boundary = range_boundary(crabb_matrix(n), 128)
    assert np.max(np.abs(np.abs(boundary.nodes) - 1.0)) < 1e-8
    assert boundary.strictly_convex


@pytest.mark.parametrize("t", [0.0, 0.2, 0.6])
def test_li_range_is_disk_of_known_radius(t):
    boundary = range_boundary(li_matrix(t), 128)
    r = li_disk_radius(t)
    assert np.max(np.abs(np.abs(boundary.nodes) - r)) < 1e-8


def test_boundary_nodes_inside_range_and_convex():
    rng = rng_for(61)
    a = random_complex_gaussian(rng, 4)
    boundary = range_boundary(a, 128)
    assert boundary.convex
    # cross products all one sign within tolerance
    edges = np.roll(boundary.nodes, -1) - boundary.nodes
    nxt = np.roll(edges, -1)
    cross = edges.real * nxt.imag - edges.imag * nxt.real
    assert np.min(cross) > -1e-10 * np.max(np.abs(boundary.nodes)) ** 2


def test_rotation_translation_equivariance():
    rng = rng_for(62)
    a = random_complex_gaussian(rng, 4)
    m = 128
    shift = 5
    phase = np.exp(2j * np.pi * shift / m)
    c = 0.7 - 0.3j
    moved = range_boundary(phase * a + c * np.eye(4), m)
    base = range_boundary(a, m)
    aligned = phase * np.roll(base.nodes, shift) + c
    assert np.max(np.abs(moved.nodes - aligned)) < 1e-9


def test_numerical_radius_hermitian():
    rng = rng_for(63)
    h = rng.standard_normal((5, 5))
    h = h + h.T
    assert numerical_radius(h) == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(h))), abs=1e-10)


def test_numerical_radius_jordan_block():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert numerical_radius(a) == pytest.approx(0.5, abs=1e-10)


def test_numerical_radius_li_zero():
    assert numerical_radius(li_matrix(0.0)) == pytest.approx(np.sqrt(2.0) / 2.0, abs=1e-10)


def test_radius_norm_two_sided_bound():
    for i in range(20):
        rng = rng_for(64, i)
        a = random_complex_gaussian(rng, int(rng.integers(2, 6)))
        w = numerical_radius(a)
        nrm = np.linalg.norm(a, 2)
        assert w <= nrm + 1e-10
        assert nrm <= 2.0 * w + 1e-10


def test_spectrum_in_interior_crabb():
    a = crabb_matrix(4)
    boundary = range_boundary(a, 128)
    inside, margin = spectrum_in_interior(a, boundary)
    assert inside
    assert margin == pytest.approx(1.0, abs=1e-3)


def test_spectrum_on_boundary_for_normal_matrix():
    a = np.diag([1.0, 1.0j, -0.5])
    boundary = range_boundary(a, 64)
    inside, margin = spectrum_in_interior(a, boundary)
    assert not inside


def test_spectrum_margin_matches_direct_distances():
    rng = rng_for(65)
    a = random_complex_gaussian(rng, 4)
    boundary = range_boundary(a, 128)
    _, margin = spectrum_in_interior(a, boundary)
    direct = min(
        _distance_to_polyline(ev, boundary.nodes) for ev in np.linalg.eigvals(a)
    )
    assert margin == pytest.approx(direct, rel=1e-12)


def test_degenerate_range_flagged():
    boundary = range_boundary(np.diag([-1.0, 0.0, 1.0]), 64)
    assert boundary.degenerate
    assert not boundary.strictly_convex


def test_minimum_node_count_enforced():
    with pytest.raises(OutOfRange):
        range_boundary(np.eye(2), 8)


def test_range_report_assembles():
    rep = range_report(crabb_matrix(3), 64)
    assert rep.spectrum_interior
    assert rep.radius == pytest.approx(1.0, abs=1e-8)
    blob = rep.to_json()
    assert blob["strictly_convex"] and not blob["degenerate"]


def test_boundary_from_function_ellipse():
    boundary = boundary_from_function(lambda t: np.cos(t) + 0.6j * np.sin(t), 128)
    assert boundary.strictly_convex
    assert boundary.m == 128
    # spectral tangents match the analytic derivative
    expected = -np.sin(boundary.thetas) + 0.6j * np.cos(boundary.thetas)
    assert np.max(np.abs(boundary.tangents - expected)) < 1e-10
