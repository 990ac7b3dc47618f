"""Binary classification-error bounds derived from mutual information.

The Fano inequality lower-bounds the error probability and the Hu bound
upper-bounds it, both through the residual uncertainty ``H(C) - I``.  The
error-probability formulas work in bits; every MI argument arrives in nats
and is converted at the boundary.  Both inversions use bisection: the
derivative of the binary entropy diverges at zero, where Newton steps
misbehave, while bisection at 1e-12 tolerance is unconditionally robust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mixture import label_entropy

__all__ = [
    "PeResult",
    "binary_entropy",
    "inverse_binary_entropy",
    "fano_lower_pe",
    "hu_upper_pe",
    "pe_bounds",
]

_LN2 = math.log(2.0)
BISECT_TOL = 1e-12


@dataclass(frozen=True)
class PeResult:
    fano_lower: float  # in [0, 0.5]
    hu_upper: float  # in [0, p_min]
    source_mi: float  # nats
    p_min: float


def binary_entropy(x: float) -> float:
    """``h_b(x) = -x log2 x - (1-x) log2(1-x)`` in bits; 0 at both endpoints."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _bisect_increasing(fun, target: float, lo: float, hi: float) -> float:
    """Root of ``fun(x) = target`` for increasing fun on [lo, hi]."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        err = fun(mid) - target
        if abs(err) <= BISECT_TOL:
            return mid
        if err < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-17:
            break
    return 0.5 * (lo + hi)


def inverse_binary_entropy(h: float) -> float:
    """The branch of ``h_b^{-1}`` on [0, 1/2], to 1e-12 in entropy value."""
    if not 0.0 <= h <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {h!r}")
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5
    return _bisect_increasing(binary_entropy, h, 0.0, 0.5)


def _hu_f(x: float, p_min: float) -> float:
    """The strictly increasing bits-valued function inverted by the Hu bound."""
    if x == 0.0:
        return 0.0
    return (
        -p_min * math.log2(p_min / (x + p_min))
        - x * math.log2(x / (x + p_min))
    )


def _require_binary(probs: np.ndarray) -> None:
    if probs.size != 2:
        raise ValueError("error-probability bounds are defined for two classes only")


def fano_lower_pe(mi_nats: float, class_probs) -> float:
    """Fano lower bound on the error probability, binary classes only.

    ``Pe >= h_b^{-1}[H(C) - I]`` with both terms in bits; the argument is
    clamped to [0, 1] so noisy MI estimates slightly outside [0, H(C)]
    degrade gracefully.
    """
    probs = np.asarray(class_probs, dtype=float)
    _require_binary(probs)
    if math.isnan(mi_nats):
        return math.nan
    residual = label_entropy(probs) / _LN2 - mi_nats / _LN2
    return inverse_binary_entropy(min(1.0, max(0.0, residual)))


def hu_upper_pe(mi_nats: float, class_probs) -> float:
    """Hu upper bound ``Pe <= min(P_min, f^{-1}[H(C) - I])``, binary only.

    ``f`` is strictly increasing on [0, P_min] with ``f(0) = 0`` and
    ``f(P_min) = 2 P_min`` bits; arguments beyond ``f(P_min)`` hit the
    ``min`` branch and return ``P_min``.
    """
    probs = np.asarray(class_probs, dtype=float)
    _require_binary(probs)
    if math.isnan(mi_nats):
        return math.nan
    p_min = float(probs.min())
    if p_min == 0.0:
        return 0.0
    residual = max(0.0, label_entropy(probs) / _LN2 - mi_nats / _LN2)
    if residual == 0.0:
        return 0.0
    if residual >= _hu_f(p_min, p_min):
        return p_min
    x = _bisect_increasing(lambda v: _hu_f(v, p_min), residual, 0.0, p_min)
    return min(x, p_min)


def pe_bounds(mi_nats: float, class_probs) -> PeResult:
    """Both error bounds for one MI value."""
    probs = np.asarray(class_probs, dtype=float)
    _require_binary(probs)
    return PeResult(
        fano_lower=fano_lower_pe(mi_nats, probs),
        hu_upper=hu_upper_pe(mi_nats, probs),
        source_mi=float(mi_nats),
        p_min=float(probs.min()),
    )
