"""Multivariate Gaussian components with cached Cholesky factorizations.

Every density, sampling and divergence computation in this library goes
through :class:`GaussianComponent`.  The covariance is factorized exactly
once, at construction, which both validates positive-definiteness early and
lets all downstream code reuse the factor through triangular solves instead
of ever forming an explicit inverse.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

__all__ = ["GaussianComponent", "mahalanobis_sq"]

_LOG_2PI = np.log(2.0 * np.pi)

# Asymmetry up to this magnitude is treated as serialization round-off and
# symmetrized away; anything larger is a real bug in the caller's matrix.
SYMMETRY_TOL = 1e-12


def _cholesky_spd(matrix: np.ndarray, what: str) -> np.ndarray:
    """Lower Cholesky factor of an SPD matrix, with a readable error."""
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"{what} is not positive definite") from exc


class GaussianComponent:
    """A single multivariate normal, immutable after construction.

    Parameters
    ----------
    mean : array_like, shape (d,)
        Component mean.
    cov : array_like, shape (d, d)
        Symmetric positive-definite covariance.  Asymmetry up to
        ``SYMMETRY_TOL`` is symmetrized via ``(A + A.T) / 2``; larger
        asymmetry raises ``ValueError``.

    Attributes
    ----------
    mean : ndarray, shape (d,)
    cov : ndarray, shape (d, d)
        The symmetrized covariance actually factorized.
    chol : ndarray, shape (d, d)
        Cached lower Cholesky factor, ``cov = chol @ chol.T``.
    log_det : float
        Cached ``ln|cov| = 2 * sum(log(diag(chol)))``.
    """

    __slots__ = ("mean", "cov", "chol", "log_det")

    def __init__(self, mean, cov):
        mean = np.atleast_1d(np.asarray(mean, dtype=float))
        if mean.ndim != 1 or mean.size < 1:
            raise ValueError("mean must be a vector of length >= 1")
        d = mean.size
        cov = np.asarray(cov, dtype=float)
        if cov.shape == () and d == 1:
            cov = cov.reshape(1, 1)
        if cov.shape != (d, d):
            raise ValueError(f"cov must have shape ({d}, {d}), got {cov.shape}")
        asym = float(np.max(np.abs(cov - cov.T))) if d > 1 else 0.0
        if asym > SYMMETRY_TOL:
            raise ValueError(
                f"covariance asymmetry {asym:.3g} exceeds tolerance {SYMMETRY_TOL:g}"
            )
        cov = 0.5 * (cov + cov.T)
        chol = _cholesky_spd(cov, "covariance")

        self.mean = mean
        self.cov = cov
        self.chol = chol
        self.log_det = float(2.0 * np.sum(np.log(np.diag(chol))))
        for arr in (self.mean, self.cov, self.chol):
            arr.setflags(write=False)

    @property
    def dim(self) -> int:
        """Data dimension d."""
        return self.mean.size

    def log_density(self, x) -> float | np.ndarray:
        """Log density at ``x`` in nats.

        Accepts a single point of shape ``(d,)`` (returns a float) or a
        batch of shape ``(n, d)`` (returns shape ``(n,)``).  The quadratic
        form is evaluated with a triangular solve against the cached
        factor; the covariance inverse is never formed.
        """
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = x[None, :] if single else x
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError(f"point dimension {x.shape} does not match d={self.dim}")
        z = solve_triangular(self.chol, (pts - self.mean).T, lower=True)
        quad = np.einsum("dn,dn->n", z, z)
        out = -0.5 * (self.dim * _LOG_2PI + self.log_det + quad)
        return float(out[0]) if single else out

    def sample(self, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
        """Draw ``mean + chol @ z`` with ``z`` i.i.d. standard normal.

        Deterministic for a given ``rng`` state: the same seeded generator
        reproduces the same sequence.  Returns shape ``(d,)`` when ``size``
        is None, else ``(size, d)``.
        """
        n = 1 if size is None else int(size)
        z = rng.standard_normal((n, self.dim))
        pts = self.mean + z @ self.chol.T
        return pts[0] if size is None else pts


def mahalanobis_sq(delta, metric_cov) -> float:
    """Squared Mahalanobis norm ``delta.T @ inv(metric_cov) @ delta``.

    ``metric_cov`` must be SPD; it is factorized here and applied through a
    triangular solve.  Always >= 0.
    """
    delta = np.atleast_1d(np.asarray(delta, dtype=float))
    metric_cov = np.asarray(metric_cov, dtype=float)
    if metric_cov.shape == () and delta.size == 1:
        metric_cov = metric_cov.reshape(1, 1)
    if metric_cov.shape != (delta.size, delta.size):
        raise ValueError("metric_cov shape does not match delta length")
    chol = _cholesky_spd(0.5 * (metric_cov + metric_cov.T), "metric covariance")
    z = solve_triangular(chol, delta, lower=True)
    return float(z @ z)
