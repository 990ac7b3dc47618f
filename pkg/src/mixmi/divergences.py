"""Closed-form pairwise divergences between Gaussian components.

Implements the Kullback-Leibler divergence, the Chernoff-alpha divergence
``-ln integral p_i^alpha p_j^(1-alpha)`` (the Bhattacharyya distance at
``alpha = 1/2``), and the combined distance whose reciprocal is the mean of
the two reciprocals.  All values are in nats and provably nonnegative;
floating-point cancellation below ``CANCELLATION_TOL`` is clamped to zero
while anything more negative raises :class:`NumericalConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .gaussian import GaussianComponent, _cholesky_spd
from .mixture import LabeledMixture

__all__ = [
    "DivergenceMatrices",
    "NumericalConsistencyError",
    "kl_gaussian",
    "chernoff_gaussian",
    "combined_distance",
    "pairwise_matrices",
    "pairwise_kl",
    "pairwise_chernoff",
    "matrix_csv",
]

CANCELLATION_TOL = 1e-12

DEFAULT_ALPHA = 0.5


class NumericalConsistencyError(RuntimeError):
    """A provably nonnegative quantity came out significantly negative."""


def _clamp_nonneg(value: float, what: str) -> float:
    if value < -CANCELLATION_TOL:
        raise NumericalConsistencyError(f"{what} evaluated to {value!r} < 0")
    return max(0.0, value)


@dataclass(frozen=True)
class DivergenceMatrices:
    """Pairwise divergence matrices for one mixture.

    ``kl[i, j]``, ``chernoff[i, j]`` and ``combined_d[i, j]`` hold the
    divergences from component i to component j, in nats; diagonals are
    zero.  Entries for pairs involving a zero-weight component are left at
    zero and are never consumed by any estimator.  ``chernoff`` is
    symmetric when ``alpha = 1/2``.
    """

    kl: np.ndarray
    chernoff: np.ndarray
    combined_d: np.ndarray
    alpha: float


def kl_gaussian(gi: GaussianComponent, gj: GaussianComponent) -> float:
    """KL(pr_i || pr_j) between two Gaussians, in nats.

    Closed form: ``(mu' Sigma_j^-1 mu + ln|Sigma_j| - ln|Sigma_i|
    + tr(Sigma_j^-1 Sigma_i) - d) / 2`` with ``mu = mu_i - mu_j``, applied
    through the cached Cholesky factors.
    """
    if gi.dim != gj.dim:
        raise ValueError("components have different dimensions")
    z = solve_triangular(gj.chol, gi.mean - gj.mean, lower=True)
    quad = float(z @ z)
    # tr(Sigma_j^-1 Sigma_i) = || L_j^-1 L_i ||_F^2
    cross = solve_triangular(gj.chol, gi.chol, lower=True)
    trace = float(np.sum(cross * cross))
    value = 0.5 * (quad + gj.log_det - gi.log_det + trace - gi.dim)
    return _clamp_nonneg(value, "KL divergence")


def chernoff_gaussian(gi: GaussianComponent, gj: GaussianComponent, alpha: float) -> float:
    """Chernoff-alpha divergence ``-ln integral pr_i^a pr_j^(1-a)``, in nats.

    Closed form for Gaussians:
    ``a(1-a)/2 * mu' Sigma_a^-1 mu + ln(|Sigma_a| / (|Sigma_i|^(1-a) |Sigma_j|^a)) / 2``
    with ``Sigma_a = (1-a) Sigma_i + a Sigma_j``.  At ``a`` in {0, 1} the
    integral equals one, so the divergence is exactly zero for any pair.
    """
    if gi.dim != gj.dim:
        raise ValueError("components have different dimensions")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    if alpha in (0.0, 1.0):
        return 0.0
    mix = (1.0 - alpha) * gi.cov + alpha * gj.cov
    chol = _cholesky_spd(mix, "interpolated covariance")
    log_det_mix = float(2.0 * np.sum(np.log(np.diag(chol))))
    z = solve_triangular(chol, gi.mean - gj.mean, lower=True)
    quad = float(z @ z)
    value = 0.5 * alpha * (1.0 - alpha) * quad + 0.5 * (
        log_det_mix - (1.0 - alpha) * gi.log_det - alpha * gj.log_det
    )
    return _clamp_nonneg(value, "Chernoff divergence")


def combined_distance(kl_ij: float, ca_ij: float) -> float:
    """Combined distance: ``1/D = (1/KL + 1/Ca) / 2``.

    Returns 0 when either input is 0, the continuous limit of the harmonic
    mean; this keeps the diagonal of the combined matrix at zero.
    """
    if kl_ij < 0 or ca_ij < 0:
        raise ValueError("divergences must be nonnegative")
    if kl_ij == 0.0 or ca_ij == 0.0:
        return 0.0
    return 2.0 * kl_ij * ca_ij / (kl_ij + ca_ij)


def pairwise_lambda(m: LabeledMixture) -> np.ndarray | None:
    """Shared-covariance Mahalanobis matrix ``lam[i,j] = mu' Sigma^-1 mu``.

    Only defined when every component carries the same covariance (then
    ``KL = lam/2`` and ``Ca = a(1-a) lam/2``); returns None otherwise.
    """
    if not m.has_common_covariance():
        return None
    chol = m.components[0].chol
    z = solve_triangular(chol, m.means.T, lower=True).T
    diff = z[:, None, :] - z[None, :, :]
    return np.einsum("ijd,ijd->ij", diff, diff)


def _zero_inactive(mat: np.ndarray, weights: np.ndarray) -> np.ndarray:
    inactive = weights <= 0
    if inactive.any():
        mat[inactive, :] = 0.0
        mat[:, inactive] = 0.0
    return mat


def pairwise_kl(m: LabeledMixture) -> np.ndarray:
    """N x N matrix of pairwise KL divergences (zero-weight pairs skipped)."""
    lam = pairwise_lambda(m)
    if lam is not None:
        return _zero_inactive(0.5 * lam, m.weights)
    n = m.n_components
    kl = np.zeros((n, n))
    active = np.flatnonzero(m.weights > 0)
    for i in active:
        for j in active:
            if i != j:
                kl[i, j] = kl_gaussian(m.components[i], m.components[j])
    return kl


def pairwise_chernoff(m: LabeledMixture, alpha: float) -> np.ndarray:
    """N x N matrix of pairwise Chernoff-alpha divergences."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    lam = pairwise_lambda(m)
    if lam is not None:
        return _zero_inactive(0.5 * alpha * (1.0 - alpha) * lam, m.weights)
    n = m.n_components
    ca = np.zeros((n, n))
    active = np.flatnonzero(m.weights > 0)
    symmetric = alpha == 0.5
    for pos, i in enumerate(active):
        others = active[pos + 1 :] if symmetric else active
        for j in others:
            if i == j:
                continue
            ca[i, j] = chernoff_gaussian(m.components[i], m.components[j], alpha)
            if symmetric:
                ca[j, i] = ca[i, j]
    return ca


def pairwise_matrices(m: LabeledMixture, alpha: float = DEFAULT_ALPHA) -> DivergenceMatrices:
    """Assemble the KL, Chernoff-alpha and combined-distance matrices.

    Deterministic, and consistent entry by entry with the per-pair
    functions above.
    """
    kl = pairwise_kl(m)
    ca = pairwise_chernoff(m, alpha)
    both = (kl > 0) & (ca > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        combined = np.where(both, 2.0 * kl * ca / (kl + ca), 0.0)
    return DivergenceMatrices(kl=kl, chernoff=ca, combined_d=combined, alpha=alpha)


def matrix_csv(matrix: np.ndarray) -> str:
    """Row-major CSV dump of a square matrix, header row of column indices."""
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    lines = ["," + ",".join(str(j) for j in range(n))]
    for i in range(n):
        lines.append(f"{i}," + ",".join(format(v, ".12g") for v in matrix[i]))
    return "\n".join(lines) + "\n"
