from pathlib import Path

import numpy as np
import pytest

from mixmi import GaussianComponent, LabeledMixture, load_mixture

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def two_gauss_1d() -> LabeledMixture:
    """Means 0 and 2, unit variance, equal weights, one component per class."""
    return load_mixture((FIXTURES / "two_gauss_1d.json").read_text())


def make_random_mixture(rng, d=2, per_class=(3, 3), mean_scale=2.0,
                        homoscedastic=False, equal_weights=False):
    """A valid random mixture for property tests; d <= 2 keeps oracles usable."""
    comps, labels = [], []
    shared_cov = None
    if homoscedastic:
        a = rng.uniform(-0.5, 0.5, (d, d))
        shared_cov = a @ a.T + np.diag(rng.uniform(0.8, 1.5, d))
    for c, n in enumerate(per_class, start=1):
        for _ in range(n):
            mean = rng.uniform(-mean_scale, mean_scale, d)
            if homoscedastic:
                cov = shared_cov
            else:
                a = rng.uniform(-0.5, 0.5, (d, d))
                cov = a @ a.T + np.diag(rng.uniform(0.8, 1.5, d))
            comps.append(GaussianComponent(mean, cov))
            labels.append(c)
    n_total = len(comps)
    if equal_weights:
        weights = np.full(n_total, 1.0 / n_total)
    else:
        weights = rng.uniform(0.2, 1.0, n_total)
        weights /= weights.sum()
    return LabeledMixture(comps, weights, labels, len(per_class))


@pytest.fixture
def random_mixture_factory():
    return make_random_mixture
