import math

import numpy as np
import pytest

from conftest import make_random_mixture
from mixmi import (
    GaussianComponent,
    LabeledMixture,
    mc_mutual_information,
    quadrature_bayes_error,
    quadrature_mutual_information,
)
from mixmi.oracles import _stratum_counts

LN2 = math.log(2.0)


def test_single_class_mc_zero():
    m = LabeledMixture(
        [GaussianComponent([0.0], [[1.0]]), GaussianComponent([2.0], [[1.0]])],
        [0.4, 0.6], [1, 1], 1,
    )
    res = mc_mutual_information(m, 5000, seed=1)
    assert abs(res.value) < 1e-12
    assert res.std_error < 1e-12


def test_identical_classes_mc_zero_within_noise():
    g = GaussianComponent([0.0, 0.0], np.eye(2))
    m = LabeledMixture([g, g], [0.5, 0.5], [1, 2], 2)
    res = mc_mutual_information(m, 20_000, seed=2)
    assert abs(res.value) <= 3 * res.std_error + 1e-12


def test_mc_within_bounds_and_near_quadrature(two_gauss_1d):
    res = mc_mutual_information(two_gauss_1d, 200_000, seed=3)
    lower = LN2 - math.log1p(math.exp(-0.5))
    upper = LN2 - math.log1p(math.exp(-2.0))
    assert lower <= res.value <= upper
    quad = quadrature_mutual_information(two_gauss_1d, 2001)
    assert abs(res.value - quad.value) <= 3 * res.std_error
    assert quad.std_error == 0.0


def test_mc_deterministic_given_seed(two_gauss_1d):
    a = mc_mutual_information(two_gauss_1d, 10_000, seed=5)
    b = mc_mutual_information(two_gauss_1d, 10_000, seed=5)
    assert a.value == b.value and a.std_error == b.std_error
    c = mc_mutual_information(two_gauss_1d, 10_000, seed=6)
    assert c.value != a.value


def test_mc_range_property():
    rng = np.random.default_rng(71)
    for _ in range(5):
        m = make_random_mixture(rng, d=2, per_class=(2, 2))
        res = mc_mutual_information(m, 20_000, seed=7)
        h_c = -np.sum([p * np.log(p) for p in
                       [m.weights[m.labels == c].sum() for c in (1, 2)]])
        assert -3 * res.std_error <= res.value <= h_c + 3 * res.std_error


def test_stratum_counts_exact_and_deterministic():
    w = np.array([0.5003, 0.4997, 0.0])
    counts = _stratum_counts(w, 101)
    assert counts.sum() == 101 and counts[2] == 0
    assert counts[0] >= counts[1] >= 1
    tiny = np.array([1e-9, 1.0 - 1e-9])
    counts = _stratum_counts(tiny, 10)
    assert counts.tolist() == [1, 9]  # positive weight keeps one sample
    with pytest.raises(ValueError):
        _stratum_counts(np.array([0.5, 0.5]), 1)


def test_quadrature_identical_classes_zero():
    g = GaussianComponent([0.0, 0.0], np.eye(2))
    m = LabeledMixture([g, g], [0.5, 0.5], [1, 2], 2)
    assert abs(quadrature_mutual_information(m, 301).value) < 1e-8


def test_quadrature_separable_limit():
    m = LabeledMixture(
        [GaussianComponent([-50.0], [[1.0]]), GaussianComponent([50.0], [[1.0]])],
        [0.5, 0.5], [1, 2], 2,
    )
    assert abs(quadrature_mutual_information(m, 4001).value - LN2) < 1e-6


def test_quadrature_resolution_converged(two_gauss_1d):
    coarse = quadrature_mutual_information(two_gauss_1d, 1001).value
    fine = quadrature_mutual_information(two_gauss_1d, 2001).value
    assert abs(fine - coarse) < 1e-6


def test_quadrature_rejects_high_dimension():
    g = GaussianComponent([0.0, 0.0, 0.0], np.eye(3))
    m = LabeledMixture([g], [1.0], [1], 1)
    with pytest.raises(ValueError, match="d <= 2"):
        quadrature_mutual_information(m)


def test_bayes_error_fixture(two_gauss_1d):
    # two unit-variance classes two apart: Pe = Phi(-1)
    from math import erf, sqrt

    expected = 0.5 * (1 + erf(-1 / sqrt(2)))
    assert abs(quadrature_bayes_error(two_gauss_1d, 4001) - expected) < 1e-5
