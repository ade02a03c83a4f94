import numpy as np
import pytest

from conftest import random_disk_points, rng_for
from crouzeix_lab.errors import OutOfRange
from crouzeix_lab.pick_oracle import (
    InterpolationProblem,
    check_earl_inequality,
    minimal_interpolation_norm,
    pick_feasible,
)


def test_single_node_norm_is_target_modulus():
    prob = InterpolationProblem(nodes=(0.3 + 0.2j,), targets=(0.5 - 0.1j,))
    assert minimal_interpolation_norm(prob) == pytest.approx(abs(0.5 - 0.1j), abs=1e-10)


def test_constant_targets_norm():
    w = 0.4 - 0.3j
    prob = InterpolationProblem(nodes=(0.0, 0.5, -0.4j), targets=(w, w, w))
    assert minimal_interpolation_norm(prob) == pytest.approx(abs(w), abs=1e-9)


def test_two_node_identity_like_problem():
    # Frozen from the dense search over F = lam * c * (z - a)/(1 - conj(a) z):
    # F(0) = 0 forces a = 0, then F(1/2) = 1/2 forces lam * c = 1, so the
    # smallest sup-norm among degree <= 1 interpolants is exactly 1.
    prob = InterpolationProblem(nodes=(0.0, 0.5), targets=(0.0, 0.5))
    val = minimal_interpolation_norm(prob)
    assert 0.5 <= val <= 1.0 + 1e-9
    assert val == pytest.approx(1.0, abs=1e-9)


def test_mismatched_lengths_rejected():
    with pytest.raises(OutOfRange):
        InterpolationProblem(nodes=(0.0, 0.5), targets=(1.0,))


def test_scaling_homogeneity():
    rng = rng_for(7)
    nodes = tuple(random_disk_points(rng, 4, radius=0.8))
    targets = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    base = minimal_interpolation_norm(InterpolationProblem(nodes=nodes, targets=targets))
    c = 0.37 - 1.2j
    scaled = minimal_interpolation_norm(
        InterpolationProblem(nodes=nodes, targets=tuple(c * w for w in targets))
    )
    assert scaled == pytest.approx(abs(c) * base, abs=1e-9 * (1 + abs(c) * base))


def test_feasibility_just_above_minimum():
    rng = rng_for(11)
    nodes = tuple(random_disk_points(rng, 5, radius=0.85))
    targets = tuple(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    prob = InterpolationProblem(nodes=nodes, targets=targets)
    lam = minimal_interpolation_norm(prob)
    assert pick_feasible(prob, lam + 1e-6)


def test_earl_inequality_constant_targets():
    w = 0.2 + 0.6j
    prob = InterpolationProblem(nodes=(0.1, -0.5), targets=(w, w))
    report = check_earl_inequality(prob)
    assert report.holds
    assert report.lhs == pytest.approx(abs(w), abs=1e-9)
    assert report.lhs <= report.rhs


def test_earl_inequality_random_problem():
    rng = rng_for(23)
    nodes = tuple(random_disk_points(rng, 4, radius=0.9))
    targets = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    report = check_earl_inequality(InterpolationProblem(nodes=nodes, targets=targets))
    assert report.holds


def test_earl_inequality_well_separated_nodes():
    # nodes pushed near the circle: delta close to 1, so rhs/max|w| near 1
    nodes = tuple(0.97 * np.exp(2j * np.pi * k / 4) for k in range(4))
    rng = rng_for(31)
    targets = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    report = check_earl_inequality(InterpolationProblem(nodes=nodes, targets=targets))
    assert report.holds
    assert report.delta > 0.9
    wmax = max(abs(w) for w in targets)
    assert report.rhs / wmax < 2.0


def test_earl_inequality_on_200_seeded_problems():
    failures = 0
    for i in range(200):
        rng = rng_for(1000, i)
        n = int(rng.integers(2, 7))
        nodes = random_disk_points(rng, n, radius=0.9)
        if np.min(np.abs(nodes[:, None] - nodes[None, :]) + np.eye(n)) < 1e-6:
            continue
        targets = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        report = check_earl_inequality(
            InterpolationProblem(nodes=tuple(nodes), targets=tuple(targets))
        )
        failures += not report.holds
    assert failures == 0
