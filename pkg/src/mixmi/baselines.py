"""Baseline mutual information bounds assembled from mixture-entropy bounds.

These are the reference bounds the tighter pairwise bounds are compared
against: each combines an upper and a lower bound on a mixture entropy, so
the numerator and denominator of the shared log-sum-exp kernel draw from
*different* divergence matrices (Chernoff-alpha vs KL).
"""

from __future__ import annotations

from .divergences import DivergenceMatrices
from .estimators import penalty_sum
from .mixture import LabeledMixture, class_marginal, label_entropy

__all__ = ["baseline_bounds"]


def baseline_bounds(m: LabeledMixture, div: DivergenceMatrices) -> tuple[float, float]:
    """Entropy-derived (lower, upper) bounds on I(x; C), in nats.

    lower: numerator over ``exp(-Ca)``, denominator over ``exp(-KL)``;
    upper: the same with the two matrices swapped.  ``lower <= upper`` is
    not enforced here; callers treat a violation as data.
    """
    h_c = label_entropy(class_marginal(m))
    lower = h_c - penalty_sum(m, div.chernoff, div.kl)
    upper = h_c - penalty_sum(m, div.kl, div.chernoff)
    return float(lower), float(upper)
