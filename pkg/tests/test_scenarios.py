import math

import numpy as np
import pytest

from mixmi import (
    Scenario,
    ScenarioSpec,
    class_marginal,
    generate,
    sigma_sweep,
    spec_from_json,
    spec_to_json,
)
from mixmi.report import compute_report
from mixmi.scenarios import default_sigma_grid


def test_generate_shapes_and_weights():
    spec = ScenarioSpec(Scenario.UNIFORM_BOUNDARY, components_per_class=7, sigma=0.5)
    m = generate(spec)
    assert m.n_components == 14 and m.num_classes == 2 and m.dim == 2
    assert np.allclose(class_marginal(m), [0.5, 0.5])
    for comp in m.components:
        assert np.array_equal(comp.cov, 0.25 * np.eye(2))


def test_uniform_boundary_geometry():
    spec = ScenarioSpec(Scenario.UNIFORM_BOUNDARY, components_per_class=5, sigma=1.0)
    m = generate(spec)
    means = m.means
    assert np.all(means[m.labels == 1, 0] == -0.5)
    assert np.all(means[m.labels == 2, 0] == +0.5)
    ys = means[m.labels == 1, 1]
    assert math.isclose(ys.min(), 0.0) and math.isclose(ys.max(), 10.0)


def test_generate_deterministic_per_seed():
    for scenario in Scenario:
        spec = ScenarioSpec(scenario, components_per_class=4, sigma=0.3, seed=9)
        a, b = generate(spec), generate(spec)
        assert np.array_equal(a.means, b.means)
        assert np.array_equal(a.weights, b.weights)
        other = generate(ScenarioSpec(scenario, components_per_class=4, sigma=0.3, seed=10))
        if scenario is not Scenario.UNIFORM_BOUNDARY:
            assert not np.array_equal(a.means, other.means)


def test_invalid_spec_rejected():
    with pytest.raises(ValueError):
        generate(ScenarioSpec(Scenario.ONE_GROUP, sigma=0.0))
    with pytest.raises(ValueError):
        generate(ScenarioSpec(Scenario.ONE_GROUP, components_per_class=0, sigma=1.0))


def test_default_sigma_grid():
    grid = default_sigma_grid(30)
    assert grid.size == 30
    assert math.isclose(grid[0], 0.01) and math.isclose(grid[-1], 10.0)


def test_sweep_single_sigma_equals_full_evaluation():
    spec = ScenarioSpec(Scenario.UNIFORM_BOUNDARY, components_per_class=3, seed=2)
    rows = sigma_sweep(spec, [0.4], oracle="none")
    direct = compute_report(generate(ScenarioSpec(
        Scenario.UNIFORM_BOUNDARY, components_per_class=3, sigma=0.4, seed=2)),
        sigma=0.4, oracle="none")
    assert len(rows) == 1
    assert rows[0].csv_values() == direct.csv_values()


def test_spec_json_round_trip():
    spec = ScenarioSpec(Scenario.MULTI_GROUP, components_per_class=7, sigma=0.3,
                        seed=11, group_count=4, group_spread=0.7)
    again = spec_from_json(spec_to_json(spec))
    assert again == spec
    assert np.array_equal(generate(again).means, generate(spec).means)


def test_spec_json_rejects_unknown_fields():
    with pytest.raises(ValueError, match="unknown"):
        spec_from_json('{"scenario": 1, "bogus": 3}')
    with pytest.raises(ValueError, match="scenario"):
        spec_from_json('{"components_per_class": 3}')
    with pytest.raises(ValueError, match="JSON"):
        spec_from_json("{nope")


def test_sweep_rows_reproducible():
    spec = ScenarioSpec(Scenario.MULTI_GROUP, components_per_class=3, seed=4)
    a = sigma_sweep(spec, [0.2, 1.0], oracle="mc", n_samples=4000, seed=4)
    b = sigma_sweep(spec, [0.2, 1.0], oracle="mc", n_samples=4000, seed=4)
    for ra, rb in zip(a, b):
        assert ra.csv_values() == rb.csv_values()
