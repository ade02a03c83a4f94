"""Compiled and pure-numpy kernels must agree to rounding error."""

import numpy as np
import pytest

from conftest import random_complex_gaussian, rng_for
from crouzeix_lab import _kernels_py as ref
from crouzeix_lab import kernels

compiled = pytest.importorskip("crouzeix_lab._kernels")


def test_selected_backend_is_compiled():
    assert kernels.BACKEND == "cython"


@pytest.fixture
def instance():
    rng = rng_for(555)
    phi = np.ascontiguousarray(0.3 * random_complex_gaussian(rng, 5))
    roots = 0.6 * (rng.standard_normal(3) + 1j * rng.standard_normal(3)) / 2
    u = rng.standard_normal(8)
    return phi, roots, u


def test_blaschke_matrix_agreement(instance):
    phi, roots, _ = instance
    a = compiled.blaschke_matrix(phi, roots, np.exp(0.4j))
    b = ref.blaschke_matrix(phi, roots, np.exp(0.4j))
    assert np.max(np.abs(a - b)) < 1e-13


def test_blaschke_matrix_empty_roots(instance):
    phi, _, _ = instance
    a = compiled.blaschke_matrix(phi, np.array([]), 1.0)
    assert np.allclose(a, np.eye(5))


def test_norm_agreement(instance):
    phi, roots, _ = instance
    assert compiled.blaschke_norm(phi, roots) == pytest.approx(
        ref.blaschke_norm(phi, roots), rel=1e-12
    )


def test_spectral_norm_agreement(instance):
    phi, _, _ = instance
    assert compiled.spectral_norm(phi) == pytest.approx(ref.spectral_norm(phi), rel=1e-13)


def test_herm_lambda_max_agreement(instance):
    phi, _, _ = instance
    for theta in (0.0, 0.7, 2.1, 5.5):
        assert compiled.herm_lambda_max(phi, theta) == pytest.approx(
            ref.herm_lambda_max(phi, theta), rel=1e-12, abs=1e-14
        )


def test_numerical_radius_agreement(instance):
    phi, _, _ = instance
    wc, tc = compiled.numerical_radius_arg(phi)
    wp, tp = ref.numerical_radius_arg(phi)
    assert wc == pytest.approx(wp, rel=1e-11)
    assert tc == pytest.approx(tp, abs=1e-6)


def test_objective_agreement(instance):
    phi, _, u = instance
    assert compiled.norm_objective(phi, u) == pytest.approx(
        ref.norm_objective(phi, u), rel=1e-12
    )
    assert compiled.radius_objective(phi, u) == pytest.approx(
        ref.radius_objective(phi, u), rel=1e-11
    )


def test_params_roundtrip_both_backends(instance):
    _, roots, _ = instance
    for mod in (compiled, ref):
        back = mod.params_to_roots(mod.roots_to_params(roots))
        assert np.max(np.abs(back - roots)) < 1e-12


def test_params_origin_handled():
    for mod in (compiled, ref):
        assert mod.params_to_roots(np.zeros(2))[0] == 0.0
        assert np.all(mod.roots_to_params(np.zeros(1, dtype=complex)) == 0.0)


def test_radius_of_known_matrix_both_backends():
    a = np.zeros((2, 2), dtype=complex)
    a[0, 1] = 1.0
    for mod in (compiled, ref):
        assert mod.numerical_radius(a) == pytest.approx(0.5, abs=1e-10)
