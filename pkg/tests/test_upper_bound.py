import math

import numpy as np
import pytest

from conftest import make_random_mixture
from mixmi import (
    GaussianComponent,
    LabeledMixture,
    batch_kl,
    build_batches_full,
    build_batches_matched,
    check_assignment,
    minimize_upper_bound,
    pairwise_kl,
    pairwise_matrices,
    quadrature_mutual_information,
    randomize_phi,
    upper_bound_gradient,
    upper_bound_mi,
    upper_bound_objective,
)
from mixmi.upper_bound import BatchMode, phi_csv, trace_csv

LN2 = math.log(2.0)


def _pair_kl(m, a):
    return batch_kl(a, pairwise_kl(m))


def test_full_single_combination(two_gauss_1d):
    a = build_batches_full(two_gauss_1d)
    assert a.n_batches == 1
    assert np.allclose(a.phi, [[0.5, 0.5]])
    check_assignment(two_gauss_1d, a)


def test_full_enumerates_all_pairs():
    rng = np.random.default_rng(41)
    m = make_random_mixture(rng, d=1, per_class=(2, 3))
    a = build_batches_full(m)
    assert a.n_batches == 6
    pairs = {tuple(row) for row in a.batches}
    assert len(pairs) == 6
    check_assignment(m, a)


def test_full_proportional_satisfies_constraints_tightly():
    rng = np.random.default_rng(42)
    for _ in range(10):
        m = make_random_mixture(rng, d=1, per_class=(3, 2, 2))
        a = build_batches_full(m)
        check_assignment(m, a, tol=1e-15)


def test_full_cap_exceeded():
    rng = np.random.default_rng(43)
    m = make_random_mixture(rng, d=1, per_class=(3, 3))
    with pytest.raises(ValueError, match="matched"):
        build_batches_full(m, cap=8)


def test_matched_identity_when_aligned():
    # KL-diagonal-dominant: components already paired off
    comps = [
        GaussianComponent([0.0], [[1.0]]),
        GaussianComponent([5.0], [[1.0]]),
        GaussianComponent([0.1], [[1.0]]),
        GaussianComponent([5.1], [[1.0]]),
    ]
    m = LabeledMixture(comps, [0.25] * 4, [1, 1, 2, 2], 2)
    a = build_batches_matched(m)
    assert {tuple(row) for row in a.batches} == {(0, 2), (1, 3)}
    check_assignment(m, a)


def test_matched_crossed_cost():
    # cost [[4,1],[2,3]] -> match (0->1, 1->0), total 3
    m = LabeledMixture(
        [GaussianComponent([0.0], [[1.0]])] * 2 + [GaussianComponent([0.0], [[1.0]])] * 2,
        [0.25] * 4, [1, 1, 2, 2], 2,
    )
    div = pairwise_matrices(m)
    cost = np.array([[4.0, 1.0], [2.0, 3.0]])
    kl = div.kl.copy()
    kl[np.ix_([0, 1], [2, 3])] = cost
    fake = type(div)(kl=kl, chernoff=div.chernoff, combined_d=div.combined_d, alpha=0.5)
    a = build_batches_matched(m, fake)
    assert {tuple(row) for row in a.batches} == {(0, 3), (1, 2)}


def test_matched_unequal_counts_pads_with_zero_phi():
    rng = np.random.default_rng(44)
    m = make_random_mixture(rng, d=1, per_class=(3, 2))
    a = build_batches_matched(m)
    assert a.n_batches == 3
    assert a.mode is BatchMode.MATCHED
    check_assignment(m, a)
    assert (a.phi == 0.0).sum() == 1  # one dummy slot


def test_objective_single_batch_fixture(two_gauss_1d):
    a = build_batches_full(two_gauss_1d)
    value = upper_bound_objective(two_gauss_1d, a, _pair_kl(two_gauss_1d, a))
    assert math.isclose(value, LN2 - math.log1p(math.exp(-2.0)), abs_tol=1e-12)


def test_objective_identical_components_zero():
    g = GaussianComponent([0.0], [[1.0]])
    m = LabeledMixture([g, g, g, g], [0.25] * 4, [1, 1, 2, 2], 2)
    a = build_batches_full(m)
    assert abs(upper_bound_objective(m, a, _pair_kl(m, a))) < 1e-12


def test_objective_invariant_to_batch_order():
    rng = np.random.default_rng(45)
    m = make_random_mixture(rng, d=1, per_class=(2, 2))
    a = build_batches_full(m)
    pk = _pair_kl(m, a)
    perm = rng.permutation(a.n_batches)
    shuffled = type(a)(a.batches[perm], a.phi[perm], a.mode)
    assert math.isclose(
        upper_bound_objective(m, a, pk),
        upper_bound_objective(m, shuffled, pk[perm]),
        rel_tol=1e-12,
    )


def test_gradient_matches_central_differences():
    rng = np.random.default_rng(46)
    m = make_random_mixture(rng, d=2, per_class=(3, 3))
    a = randomize_phi(build_batches_full(m), m, rng)
    pk = _pair_kl(m, a)
    grad = upper_bound_gradient(m, a, pk)
    h = 1e-6
    for _ in range(25):
        i = int(rng.integers(a.n_batches))
        j = int(rng.integers(2))
        up, down = a.phi.copy(), a.phi.copy()
        up[i, j] += h
        down[i, j] -= h
        fd = (
            upper_bound_objective(m, a.with_phi(up), pk)
            - upper_bound_objective(m, a.with_phi(down), pk)
        ) / (2 * h)
        assert abs(fd - grad[i, j]) <= 1e-5 * max(1.0, abs(fd))


def test_minimize_single_batch_noop(two_gauss_1d):
    a = build_batches_full(two_gauss_1d)
    res = minimize_upper_bound(two_gauss_1d, a)
    assert res.converged and res.iterations == 1
    assert math.isclose(res.value, LN2 - math.log1p(math.exp(-2.0)), abs_tol=1e-12)
    assert np.array_equal(res.assignment.phi, a.phi)


def test_minimize_descends_and_is_monotone():
    rng = np.random.default_rng(47)
    m = make_random_mixture(rng, d=2, per_class=(3, 3))
    a = build_batches_full(m)
    res = minimize_upper_bound(m, a, pair_kl=_pair_kl(m, a))
    trace = res.objective_trace
    assert res.value <= trace[0]
    assert np.all(np.diff(trace) <= 1e-14)
    assert res.value == trace[-1]


def test_minimize_rejects_infeasible_start():
    rng = np.random.default_rng(48)
    m = make_random_mixture(rng, d=1, per_class=(2, 2))
    a = build_batches_full(m)
    bad = a.with_phi(a.phi * 2.0)
    with pytest.raises(ValueError, match="constraint"):
        minimize_upper_bound(m, bad)


def test_full_optimum_not_above_matched():
    rng = np.random.default_rng(49)
    for _ in range(5):
        m = make_random_mixture(rng, d=2, per_class=(3, 3))
        div = pairwise_matrices(m)
        full = upper_bound_mi(m, div, "full")
        am = build_batches_matched(m, div)
        matched_value = upper_bound_objective(m, am, batch_kl(am, div.kl))
        assert full.value <= matched_value + 1e-12


def test_any_feasible_phi_upper_bounds_quadrature():
    rng = np.random.default_rng(50)
    m = make_random_mixture(rng, d=2, per_class=(2, 3))
    quad = quadrature_mutual_information(m, 501).value
    a = build_batches_full(m)
    pk = _pair_kl(m, a)
    for _ in range(25):
        trial = randomize_phi(a, m, rng)
        assert upper_bound_objective(m, trial, pk) >= quad - 1e-4


def test_optimized_bound_above_quadrature(two_gauss_1d):
    rng = np.random.default_rng(51)
    res = upper_bound_mi(two_gauss_1d)
    quad = quadrature_mutual_information(two_gauss_1d, 2001).value
    assert res.value >= quad - 1e-4
    for _ in range(3):
        m = make_random_mixture(rng, d=2, per_class=(2, 2))
        assert upper_bound_mi(m).value >= quadrature_mutual_information(m, 501).value - 1e-4


def test_auto_mode_switches_to_matched():
    rng = np.random.default_rng(52)
    m = make_random_mixture(rng, d=1, per_class=(3, 4))
    res = upper_bound_mi(m, mode="auto", matched_threshold=10)
    assert res.assignment.mode is BatchMode.MATCHED
    res = upper_bound_mi(m, mode="auto", matched_threshold=12)
    assert res.assignment.mode is BatchMode.FULL


def test_csv_dumps():
    rng = np.random.default_rng(53)
    m = make_random_mixture(rng, d=1, per_class=(2, 2))
    a = build_batches_full(m)
    res = minimize_upper_bound(m, a)
    text = phi_csv(res.assignment)
    assert text.splitlines()[0] == "batch,comp_c1,phi_c1,comp_c2,phi_c2"
    assert len(text.strip().splitlines()) == a.n_batches + 1
    tr = trace_csv(res)
    assert tr.splitlines()[0] == "sweep,objective"
