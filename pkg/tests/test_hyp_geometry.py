import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crouzeix_lab.errors import DuplicatePoint, OutOfRange
from crouzeix_lab.hyp_geometry import (
    BlaschkeProduct,
    blaschke_eval,
    blaschke_factorizations,
    earl_bound,
    mobius_disk_automorphism,
    pseudo_distance,
    separation_constant,
)

disk_points = st.complex_numbers(max_magnitude=0.9, allow_infinity=False, allow_nan=False)


def test_pseudo_distance_from_origin():
    w = 0.3 + 0.4j
    assert pseudo_distance(0.0, w) == pytest.approx(abs(w), abs=1e-15)


def test_pseudo_distance_half_pair():
    assert pseudo_distance(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)


def test_pseudo_distance_identity():
    z = 0.2 - 0.7j
    assert pseudo_distance(z, z) == 0.0


def test_pseudo_distance_rejects_boundary():
    with pytest.raises(OutOfRange):
        pseudo_distance(1.0, 0.0)


@given(disk_points, disk_points)
def test_pseudo_distance_symmetric(z, w):
    assert pseudo_distance(z, w) == pytest.approx(pseudo_distance(w, z), abs=1e-14)


@given(disk_points, disk_points, disk_points)
@settings(max_examples=200)
def test_pseudo_distance_triangle(z, w, v):
    assert pseudo_distance(z, w) <= pseudo_distance(z, v) + pseudo_distance(v, w) + 1e-12


@given(disk_points, disk_points, disk_points, st.floats(0, 2 * math.pi))
def test_pseudo_distance_mobius_invariant(z, w, a, phase):
    m = mobius_disk_automorphism(a, phase)
    assert pseudo_distance(m(z), m(w)) == pytest.approx(pseudo_distance(z, w), abs=1e-12)


def test_separation_two_points_real():
    rep = separation_constant([0.0, 0.6])
    assert rep.delta == pytest.approx(0.6, abs=1e-15)
    assert rep.per_point_deltas == pytest.approx([0.6, 0.6])


def test_separation_three_points_matches_brute_force():
    pts = [0.0, 0.9, -0.9]
    rep = separation_constant(pts)
    brute = []
    for j, zj in enumerate(pts):
        prod = 1.0
        for k, zk in enumerate(pts):
            if k != j:
                prod *= pseudo_distance(zj, zk)
        brute.append(prod)
    assert rep.per_point_deltas == pytest.approx(brute, abs=1e-15)
    assert rep.delta == pytest.approx(min(brute), abs=1e-15)
    assert rep.argmin_index == int(np.argmin(brute))


def test_separation_rejects_duplicates():
    z = 0.1 + 0.1j
    with pytest.raises(DuplicatePoint):
        separation_constant([z, z])


def test_earl_bound_at_one():
    assert earl_bound(1.0) == 1.0


def test_earl_bound_reference_values():
    assert earl_bound(2.0 * math.sqrt(2.0) / 3.0) == pytest.approx(2.0, abs=1e-12)
    assert earl_bound(0.5) == pytest.approx((2.0 + math.sqrt(3.0)) ** 2, abs=1e-12)


def test_earl_bound_monotone_decreasing():
    grid = np.linspace(1e-3, 1.0, 1000)
    vals = [earl_bound(d) for d in grid]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("bad", [0.0, -0.2, 1.0 + 1e-9])
def test_earl_bound_domain(bad):
    with pytest.raises(OutOfRange):
        earl_bound(bad)


def test_blaschke_empty_product_is_constant():
    b = BlaschkeProduct()
    assert b.degree == 0
    assert blaschke_eval(b, 0.3 + 0.1j) == 1.0 + 0.0j


def test_blaschke_single_root_at_origin():
    b = BlaschkeProduct(roots=(0.0,))
    z = 0.25 - 0.4j
    assert b(z) == pytest.approx(z, abs=1e-15)


def test_blaschke_substitution():
    b = BlaschkeProduct(roots=(0.5,))
    assert b(0.0) == pytest.approx(-0.5, abs=1e-15)


def test_blaschke_unimodular_on_circle(rng):
    roots = 0.7 * (rng.standard_normal(4) + 1j * rng.standard_normal(4)) / 2
    b = BlaschkeProduct(roots=tuple(roots), constant=np.exp(0.3j))
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 257)[:-1])
    assert np.max(np.abs(np.abs(b(z)) - 1.0)) < 1e-12


def test_blaschke_contractive_inside(rng):
    b = BlaschkeProduct(roots=(0.3, -0.2 + 0.4j))
    pts = 0.9 * np.sqrt(rng.uniform(0, 1, 50)) * np.exp(2j * np.pi * rng.uniform(0, 1, 50))
    assert np.all(np.abs(b(pts)) < 1.0)


def test_blaschke_rejects_root_on_circle():
    with pytest.raises(OutOfRange):
        BlaschkeProduct(roots=(1.0,))


def test_blaschke_rejects_non_unimodular_constant():
    with pytest.raises(OutOfRange):
        BlaschkeProduct(constant=0.5)


def test_blaschke_product_of_evaluations(rng):
    b1 = BlaschkeProduct(roots=(0.1, 0.2 + 0.3j), constant=np.exp(1.1j))
    b2 = BlaschkeProduct(roots=(-0.5j,), constant=np.exp(-0.4j))
    combined = BlaschkeProduct(roots=b1.roots + b2.roots, constant=b1.constant * b2.constant)
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 257)[:-1])
    assert np.max(np.abs(combined(z) - b1(z) * b2(z))) < 1e-12


def test_factorizations_degree_zero():
    b = BlaschkeProduct(constant=np.exp(0.2j))
    pairs = blaschke_factorizations(b)
    assert len(pairs) == 1
    b1, b2 = pairs[0]
    assert b1.degree == 0 and b2.degree == 0
    assert b1.constant == b.constant and b2.constant == 1.0 + 0.0j


def test_factorizations_degree_one():
    b = BlaschkeProduct(roots=(0.4,))
    pairs = blaschke_factorizations(b)
    degrees = sorted((p.degree, q.degree) for p, q in pairs)
    assert degrees == [(0, 1), (1, 0)]


def test_factorizations_pointwise_product():
    b = BlaschkeProduct(roots=(0.3, -0.2 + 0.1j), constant=np.exp(0.7j))
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 65)[:-1])
    pairs = blaschke_factorizations(b)
    assert len(pairs) == 4
    for b1, b2 in pairs:
        assert np.max(np.abs(b1(z) * b2(z) - b(z))) < 1e-12


def test_blaschke_json_round_trip():
    b = BlaschkeProduct(roots=(0.3 - 0.1j, 0.05j), constant=np.exp(2.2j))
    again = BlaschkeProduct.from_json(b.to_json())
    assert again.roots == b.roots
    assert again.constant == b.constant
