"""Class-labeled Gaussian mixtures: validation, densities, serialization.

The central model object is :class:`LabeledMixture`: a weighted list of
:class:`~mixmi.gaussian.GaussianComponent` objects, each tagged with an
integer class label in ``[1, num_classes]``.  All log-density aggregation
is done with log-sum-exp so that mixtures with component scales as small
as ``sigma = 0.01`` do not underflow.

Serialization format (one JSON document)::

    {
      "num_classes": 2,
      "components": [
        {"weight": 0.5, "label": 1, "mean": [0.0], "cov": [[1.0]]},
        {"weight": 0.5, "label": 2, "mean": [2.0], "cov": [[1.0]]}
      ]
    }

Weights must be nonnegative and sum to 1 (tolerance 1e-10), every class in
``[1, num_classes]`` must own at least one component with positive weight,
and all components must share one dimension.
"""

from __future__ import annotations

import json

import numpy as np
from scipy.special import logsumexp

from .gaussian import GaussianComponent

__all__ = [
    "LabeledMixture",
    "class_marginal",
    "label_entropy",
    "log_mixture_density",
    "load_mixture",
    "save_mixture",
]

WEIGHT_SUM_TOL = 1e-10


class LabeledMixture:
    """A weighted, class-labeled list of Gaussian components.

    Immutable after construction; safe to share across threads.

    Parameters
    ----------
    components : sequence of GaussianComponent
    weights : array_like, shape (N,)
        Nonnegative, summing to 1 within ``WEIGHT_SUM_TOL``.  Zero weights
        are permitted; such components are inert in every formula.
    labels : array_like of int, shape (N,)
        Class ids in ``[1, num_classes]``.
    num_classes : int
    """

    __slots__ = ("components", "weights", "labels", "num_classes")

    def __init__(self, components, weights, labels, num_classes):
        components = tuple(components)
        weights = np.asarray(weights, dtype=float)
        labels = np.asarray(labels, dtype=int)
        num_classes = int(num_classes)

        n = len(components)
        if n == 0:
            raise ValueError("mixture needs at least one component")
        if weights.shape != (n,) or labels.shape != (n,):
            raise ValueError("weights and labels must match the component count")
        if num_classes < 1:
            raise ValueError("num_classes must be >= 1")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL:g}")
        if np.any((labels < 1) | (labels > num_classes)):
            raise ValueError(f"labels must lie in [1, {num_classes}]")
        for c in range(1, num_classes + 1):
            sel = labels == c
            if not sel.any() or weights[sel].sum() <= 0.0:
                raise ValueError(f"class {c} has no component with positive weight")
        d = components[0].dim
        for k, comp in enumerate(components):
            if comp.dim != d:
                raise ValueError(f"component {k} has dimension {comp.dim}, expected {d}")

        self.components = components
        self.weights = weights
        self.labels = labels
        self.num_classes = num_classes
        self.weights.setflags(write=False)
        self.labels.setflags(write=False)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def means(self) -> np.ndarray:
        """Stacked component means, shape (N, d)."""
        return np.stack([c.mean for c in self.components])

    def class_indices(self, label: int) -> np.ndarray:
        """Indices of the components carrying ``label`` (1-based class id)."""
        if not 1 <= label <= self.num_classes:
            raise ValueError(f"label {label} outside [1, {self.num_classes}]")
        return np.flatnonzero(self.labels == label)

    def has_common_covariance(self) -> bool:
        """True when every component shares one covariance matrix exactly."""
        first = self.components[0].cov
        return all(np.array_equal(c.cov, first) for c in self.components[1:])

    def component_log_densities(self, x) -> np.ndarray:
        """Log densities of every component at ``x``; shape (N, n_points)."""
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        return np.stack([c.log_density(pts) for c in self.components])


def class_marginal(m: LabeledMixture) -> np.ndarray:
    """Marginal class probabilities ``P_c = sum of weights with label c``."""
    return np.array(
        [m.weights[m.labels == c].sum() for c in range(1, m.num_classes + 1)]
    )


def label_entropy(probs) -> float:
    """Shannon entropy of a discrete distribution in nats, with 0 ln 0 = 0."""
    p = np.asarray(probs, dtype=float)
    pos = p[p > 0]
    return float(-(pos * np.log(pos)).sum())


def log_mixture_density(m: LabeledMixture, x, subset: int | None = None):
    """Log of ``sum_i w_i pr_i(x)``, optionally restricted to one class.

    With ``subset=c`` the sum runs over the components labeled ``c`` and is
    *not* renormalized by ``P_c``: the result is the log of the joint
    density ``pr(x, c)``.  Accepts a single point ``(d,)`` (returns float)
    or a batch ``(n, d)`` (returns shape ``(n,)``).  Aggregation uses
    log-sum-exp; zero weights contribute nothing.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    if subset is None:
        idx = np.arange(m.n_components)
    else:
        idx = m.class_indices(int(subset))
    pts = x[None, :] if single else x
    lp = np.stack([m.components[i].log_density(pts) for i in idx])
    out = logsumexp(lp, axis=0, b=m.weights[idx, None])
    return float(out[0]) if single else out


def save_mixture(m: LabeledMixture) -> str:
    """Serialize a mixture to the JSON document format (exact round trip)."""
    doc = {
        "num_classes": m.num_classes,
        "components": [
            {
                "weight": float(w),
                "label": int(c),
                "mean": comp.mean.tolist(),
                "cov": comp.cov.tolist(),
            }
            for w, c, comp in zip(m.weights, m.labels, m.components)
        ],
    }
    return json.dumps(doc, indent=2)


def load_mixture(text: str) -> LabeledMixture:
    """Parse and validate the JSON document format.

    Raises ``ValueError`` with the offending component index on any schema
    or invariant violation (bad covariance, weight sum, label range, ...).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "num_classes" not in doc or "components" not in doc:
        raise ValueError("document must carry 'num_classes' and 'components'")
    entries = doc["components"]
    if not isinstance(entries, list) or not entries:
        raise ValueError("'components' must be a non-empty list")

    components, weights, labels = [], [], []
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ValueError(f"component {k}: expected an object")
        missing = {"weight", "label", "mean", "cov"} - entry.keys()
        if missing:
            raise ValueError(f"component {k}: missing fields {sorted(missing)}")
        try:
            components.append(GaussianComponent(entry["mean"], entry["cov"]))
        except ValueError as exc:
            raise ValueError(f"component {k}: {exc}") from exc
        weights.append(float(entry["weight"]))
        labels.append(int(entry["label"]))
    return LabeledMixture(components, weights, labels, doc["num_classes"])
