"""Deterministic generators for the benchmark geometries and sigma sweeps.

All three scenarios build a two-class, two-dimensional, homoscedastic
mixture with equal weights and covariance ``sigma^2 I``: class centers sit
on either side of the vertical boundary ``x = 0`` at offset ``+/- 0.5``,
and differ only in how they spread along it.

* ``UNIFORM_BOUNDARY`` - centers evenly spaced along the boundary;
* ``ONE_GROUP`` - centers drawn around a single point per class;
* ``MULTI_GROUP`` - centers drawn around several clusters per class.

Exact figure coordinates are not part of the contract; the geometry knobs
(boundary length, offset, group count, spread) are exposed so the trends
can be explored.  Generation is deterministic given the seed.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, replace

import numpy as np

from .gaussian import GaussianComponent
from .mixture import LabeledMixture
from .report import MiReport, compute_report

__all__ = [
    "Scenario",
    "ScenarioSpec",
    "generate",
    "default_sigma_grid",
    "sigma_sweep",
    "spec_from_json",
    "spec_to_json",
]


class Scenario(enum.Enum):
    UNIFORM_BOUNDARY = 1
    ONE_GROUP = 2
    MULTI_GROUP = 3


_DEFAULT_SPREAD = {
    Scenario.UNIFORM_BOUNDARY: 0.0,
    Scenario.ONE_GROUP: 1.0,
    Scenario.MULTI_GROUP: 0.5,
}


@dataclass(frozen=True)
class ScenarioSpec:
    """Geometry and size knobs for one generated mixture."""

    scenario: Scenario
    components_per_class: int = 20
    sigma: float = 0.5
    seed: int = 0
    boundary_length: float = 10.0
    offset: float = 0.5
    group_count: int = 5
    group_spread: float | None = None  # None: scenario default

    def spread(self) -> float:
        if self.group_spread is not None:
            return self.group_spread
        return _DEFAULT_SPREAD[Scenario(self.scenario)]


def _centers(spec: ScenarioSpec, rng: np.random.Generator, side: float) -> np.ndarray:
    n = spec.components_per_class
    length = spec.boundary_length
    kind = Scenario(spec.scenario)
    if kind is Scenario.UNIFORM_BOUNDARY:
        y = np.linspace(0.0, length, n)
        return np.column_stack([np.full(n, side * spec.offset), y])
    if kind is Scenario.ONE_GROUP:
        anchor = np.array([side * spec.offset, 0.5 * length])
        return anchor + spec.spread() * rng.standard_normal((n, 2))
    anchors_y = np.linspace(0.0, length, spec.group_count)
    anchors = np.column_stack([np.full(spec.group_count, side * spec.offset), anchors_y])
    assigned = anchors[np.arange(n) % spec.group_count]
    return assigned + spec.spread() * rng.standard_normal((n, 2))


def generate(spec: ScenarioSpec) -> LabeledMixture:
    """Build the two-class mixture for one spec (deterministic given seed)."""
    if spec.sigma <= 0:
        raise ValueError("sigma must be positive")
    if spec.components_per_class < 1:
        raise ValueError("components_per_class must be >= 1")
    rng = np.random.default_rng(spec.seed)
    cov = spec.sigma**2 * np.eye(2)
    components, labels = [], []
    for label, side in ((1, -1.0), (2, +1.0)):
        for center in _centers(spec, rng, side):
            components.append(GaussianComponent(center, cov))
            labels.append(label)
    n = len(components)
    weights = np.full(n, 1.0 / n)
    return LabeledMixture(components, weights, labels, num_classes=2)


def spec_to_json(spec: ScenarioSpec) -> str:
    """Serialize a spec to a JSON config (scenario stored by number)."""
    doc = asdict(spec)
    doc["scenario"] = Scenario(spec.scenario).value
    return json.dumps(doc, indent=2)


def spec_from_json(text: str) -> ScenarioSpec:
    """Parse a JSON config; unknown keys are rejected to catch typos."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "scenario" not in doc:
        raise ValueError("scenario config must carry a 'scenario' field")
    known = {f for f in ScenarioSpec.__dataclass_fields__}
    unknown = doc.keys() - known
    if unknown:
        raise ValueError(f"unknown scenario config fields: {sorted(unknown)}")
    doc = dict(doc)
    doc["scenario"] = Scenario(doc["scenario"])
    return ScenarioSpec(**doc)


def default_sigma_grid(n: int = 30, lo: float = 0.01, hi: float = 10.0) -> np.ndarray:
    """The default log-spaced sigma grid for sweeps."""
    return np.logspace(np.log10(lo), np.log10(hi), n)


def sigma_sweep(spec: ScenarioSpec, sigmas, **report_kwargs) -> list[MiReport]:
    """One full report per sigma; rows are independent and reproducible.

    Keyword arguments are forwarded to
    :func:`mixmi.report.compute_report` (oracle choice, sample budget,
    optimizer tolerances, ...).
    """
    reports = []
    for sigma in np.asarray(sigmas, dtype=float):
        mixture = generate(replace(spec, sigma=float(sigma)))
        reports.append(compute_report(mixture, sigma=float(sigma), **report_kwargs))
    return reports
