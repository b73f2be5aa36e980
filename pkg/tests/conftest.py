"""Shared fixtures: seeded generators and small synthetic datasets."""

import numpy as np
import pytest

from dra_py.config import DatasetSource, ExperimentConfig
from dra_py.harness import synth_generate
from dra_py.sets import random_split


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def make_spd():
    """Factory for seeded symmetric positive definite matrices."""

    def make(rng, n, shift=1.0):
        m = rng.standard_normal((n, n))
        return m @ m.T + shift * np.eye(n)

    return make


@pytest.fixture
def make_sym():
    def make(rng, n):
        m = rng.standard_normal((n, n))
        return 0.5 * (m + m.T)

    return make


@pytest.fixture
def separable_pools():
    """Well separated classes without shared variation (NFS is perfect here)."""
    return synth_generate(
        c=5,
        d=20,
        samples_per_class=9,
        variation_rank=0,
        noise_sigma=0.05,
        class_sep=5.0,
        seed=11,
    )


@pytest.fixture
def shared_pools():
    """Classes overlapping along a shared rank-3 subspace."""
    return synth_generate(
        c=4,
        d=12,
        samples_per_class=9,
        variation_rank=3,
        noise_sigma=0.1,
        class_sep=1.0,
        seed=5,
    )


@pytest.fixture
def separable_split(separable_pools):
    return random_split(separable_pools, (3, 3, 3), seed=1)


@pytest.fixture
def shared_split(shared_pools):
    return random_split(shared_pools, (3, 3, 3), seed=2)


@pytest.fixture
def separable_config():
    return ExperimentConfig(
        method="NFS",
        repetitions=5,
        seed=3,
        dataset=DatasetSource(
            kind="synth",
            c=5,
            d=20,
            samples_per_class=9,
            variation_rank=0,
            noise_sigma=0.05,
            class_sep=5.0,
            seed=11,
        ),
    )
