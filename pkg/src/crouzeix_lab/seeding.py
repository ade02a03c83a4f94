"""Deterministic random instances shared by the test and verify suites."""

import numpy as np

from .hyp_geometry import separation_constant


def rng_for(seed, index=0):
    """Child generator that is stable across runs and platforms."""
    return np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), int(index))))


def random_disk_points(rng, n, radius=0.95):
    """n points uniform in area on the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    ang = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * ang)


def random_complex_gaussian(rng, n):
    """Standard complex Gaussian matrix (unit-variance entries)."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def seeded_zero_set(seed, index, n, min_delta=0.05, radius=0.95, max_tries=500):
    """Zero set with separation at or above min_delta, by rejection sampling."""
    rng = rng_for(seed, index)
    for _ in range(max_tries):
        z = random_disk_points(rng, n, radius)
        if np.min(np.abs(z[:, None] - z[None, :]) + np.eye(n)) < 1e-6:
            continue
        if separation_constant(z).delta >= min_delta:
            return z
    raise RuntimeError(f"no admissible zero set found for seed={seed} index={index} n={n}")
