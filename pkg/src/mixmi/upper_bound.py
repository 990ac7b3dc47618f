"""Variational upper bound on I(x; C) over batch-structured weight splits.

A *batch* pairs one component slot per class; the variational parameters
``phi[m, c] >= 0`` split each component's weight across the batches whose
class-c slot it occupies, under the equality constraints
``sum_m phi[m, c] = w_i`` per component.  For any feasible ``phi``::

    I_ub = H(C) - sum_m sum_c phi[m,c] * ln( S[m,c] / phi[m,c] ),
    S[m,c] = sum_c' phi[m,c'] * exp(-KL(pr of slot c, pr of slot c'))

is an upper bound on the mutual information; slots with ``phi = 0``
contribute nothing (the ln(0/0) = 0 convention).

Two batch constructions are provided: the exhaustive one over all
component combinations (FULL), and a cheap non-optimum one (MATCHED) that
pairs components across classes by minimum-cost assignment on pairwise KL,
giving each component's full weight to its single matched batch.

The bound is minimized over ``phi`` by block-coordinate descent: one class
column at a time, with per-component multiplicative exponentiated-gradient
updates that preserve positivity and the weight sums by construction, and
a per-component step halving until the objective piece decreases.  The
objective is convex in ``phi``, so the trace decreases monotonically to
the tightest bound this construction can reach.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .divergences import DivergenceMatrices, pairwise_kl
from .mixture import LabeledMixture, class_marginal, label_entropy

__all__ = [
    "BatchMode",
    "VariationalAssignment",
    "UpperBoundResult",
    "build_batches_full",
    "build_batches_matched",
    "batch_kl",
    "check_assignment",
    "upper_bound_objective",
    "upper_bound_gradient",
    "minimize_upper_bound",
    "upper_bound_mi",
    "randomize_phi",
    "phi_csv",
    "trace_csv",
]

FULL_CAP = 1_000_000
# Above this many full batches the default construction switches to MATCHED.
MATCHED_THRESHOLD = 10_000
CONSTRAINT_TOL = 1e-9
_MAX_HALVINGS = 40


class BatchMode(enum.Enum):
    FULL = "full"
    MATCHED = "matched"


@dataclass(frozen=True)
class VariationalAssignment:
    """Batch structure plus variational parameters.

    ``batches[m, c]`` is the global component index occupying the class
    ``c+1`` slot of batch m (always a component of that class); ``phi`` has
    the same shape.  Dummy slots created by unequal class sizes reuse a
    valid component index and carry ``phi = 0``.
    """

    batches: np.ndarray  # (M, num_classes) int
    phi: np.ndarray  # (M, num_classes) float
    mode: BatchMode

    @property
    def n_batches(self) -> int:
        return self.batches.shape[0]

    def with_phi(self, phi: np.ndarray) -> "VariationalAssignment":
        return VariationalAssignment(self.batches, np.asarray(phi, float), self.mode)


@dataclass(frozen=True)
class UpperBoundResult:
    """Minimization outcome; ``objective_trace`` is non-increasing."""

    value: float
    iterations: int
    converged: bool
    objective_trace: np.ndarray
    assignment: VariationalAssignment


def _class_index_lists(m: LabeledMixture) -> list[np.ndarray]:
    return [m.class_indices(c) for c in range(1, m.num_classes + 1)]


def build_batches_full(m: LabeledMixture, cap: int = FULL_CAP) -> VariationalAssignment:
    """All component combinations, with proportional initial phi.

    ``phi[m, c] = w_i(m,c) * prod_{c' != c} w_j(m,c') / P_c'`` satisfies the
    equality constraints exactly.  Raises when the number of combinations
    exceeds ``cap`` (use the matched construction instead).
    """
    idx = _class_index_lists(m)
    n_batches = int(np.prod([len(ix) for ix in idx]))
    if n_batches > cap:
        raise ValueError(
            f"{n_batches} full batches exceed the cap {cap}; "
            "use build_batches_matched for a mixture this large"
        )
    grids = np.meshgrid(*idx, indexing="ij")
    batches = np.stack([g.ravel() for g in grids], axis=1)
    probs = class_marginal(m)
    ratios = m.weights[batches] / probs[None, :]
    phi = probs[None, :] * ratios.prod(axis=1)[:, None]
    return VariationalAssignment(batches=batches, phi=phi, mode=BatchMode.FULL)


def build_batches_matched(m: LabeledMixture, div: DivergenceMatrices | None = None) -> VariationalAssignment:
    """Minimum-KL-cost matching into ``max_c N_c`` batches.

    Each component's full weight lands in exactly one batch.  With two
    classes this is the assignment problem on the pairwise KL block; with
    more classes every class is matched against class 1 independently.
    Classes with fewer components than batches are padded with zero-phi
    dummy slots.
    """
    kl = div.kl if div is not None else pairwise_kl(m)
    w = m.weights
    idx = _class_index_lists(m)
    counts = [len(ix) for ix in idx]
    n_batches = max(counts)
    n1 = counts[0]

    batches = np.empty((n_batches, m.num_classes), dtype=int)
    phi = np.zeros((n_batches, m.num_classes))
    batches[:n1, 0] = idx[0]
    phi[:n1, 0] = w[idx[0]]
    batches[n1:, 0] = idx[0][0]  # dummy slots, phi stays 0

    for c in range(1, m.num_classes):
        ixc = idx[c]
        cost = kl[np.ix_(idx[0], ixc)]
        rows, cols = linear_sum_assignment(cost)
        slot = np.full(n_batches, -1, dtype=int)
        slot[rows] = cols
        leftovers = sorted(set(range(len(ixc))) - set(cols.tolist()))
        for extra, j in zip(range(n1, n_batches), leftovers):
            slot[extra] = j
        for b in range(n_batches):
            if slot[b] >= 0:
                comp = ixc[slot[b]]
                batches[b, c] = comp
                phi[b, c] = w[comp]
            else:
                batches[b, c] = ixc[0]
    return VariationalAssignment(batches=batches, phi=phi, mode=BatchMode.MATCHED)


def batch_kl(a: VariationalAssignment, kl_matrix: np.ndarray) -> np.ndarray:
    """Per-batch KL values between slot components, shape (M, Pi, Pi)."""
    b = a.batches
    return kl_matrix[b[:, :, None], b[:, None, :]]


def check_assignment(m: LabeledMixture, a: VariationalAssignment, tol: float = CONSTRAINT_TOL) -> None:
    """Raise unless phi is feasible: nonnegative, class-consistent slots,
    and per-component sums equal to the weights within ``tol``."""
    if a.phi.shape != a.batches.shape:
        raise ValueError("phi and batches shapes differ")
    if np.any(a.phi < 0):
        raise ValueError("phi must be nonnegative")
    for c in range(m.num_classes):
        if np.any(m.labels[a.batches[:, c]] != c + 1):
            raise ValueError(f"column {c} contains components of a different class")
        totals = np.bincount(a.batches[:, c], weights=a.phi[:, c], minlength=m.n_components)
        idx = m.class_indices(c + 1)
        err = np.max(np.abs(totals[idx] - m.weights[idx]))
        if err > tol:
            raise ValueError(f"phi sums violate the weight constraints by {err:.3g}")


def _terms_from(phi: np.ndarray, s: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(phi > 0, phi * (np.log(s) - np.log(phi)), 0.0)


def _batch_terms(phi: np.ndarray, exp_neg_kl: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-slot terms ``phi * ln(S/phi)`` (zero where phi is) and S itself."""
    s = np.einsum("mq,mcq->mc", phi, exp_neg_kl)
    return _terms_from(phi, s), s


def upper_bound_objective(m: LabeledMixture, a: VariationalAssignment, pair_kl: np.ndarray) -> float:
    """Evaluate the bound at the assignment's phi, in nats."""
    t, _ = _batch_terms(a.phi, np.exp(-pair_kl))
    return float(label_entropy(class_marginal(m)) - t.sum())


def upper_bound_gradient(m: LabeledMixture, a: VariationalAssignment, pair_kl: np.ndarray) -> np.ndarray:
    """Analytic gradient of the bound with respect to phi, shape (M, Pi).

    ``g[m,c] = 1 - ln(S[m,c]/phi[m,c]) - sum_q (phi[m,q]/S[m,q]) E[m,q,c]``.
    Entries where ``phi = 0`` (boundary of the feasible set) are reported
    as 0.
    """
    exp_neg_kl = np.exp(-pair_kl)
    phi = a.phi
    _, s = _batch_terms(phi, exp_neg_kl)
    pos = phi > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(pos, phi / s, 0.0)
        log_term = np.where(pos, np.log(s) - np.log(phi), 0.0)
    cross = np.einsum("mq,mqc->mc", ratio, exp_neg_kl)
    return np.where(pos, 1.0 - log_term - cross, 0.0)


def minimize_upper_bound(
    m: LabeledMixture,
    a: VariationalAssignment,
    tol: float = 1e-9,
    max_iter: int = 500,
    pair_kl: np.ndarray | None = None,
) -> UpperBoundResult:
    """Block-coordinate descent on phi from a feasible starting point.

    Sweeps the class columns in fixed order; within a column every
    component group gets a multiplicative update along the (sign-flipped,
    group-centered) gradient, with its step halved until that group's
    share of the objective decreases.  Stops when one full sweep lowers
    the objective by less than ``tol * max(1, |value|)`` or after
    ``max_iter`` sweeps.
    """
    check_assignment(m, a)
    if pair_kl is None:
        pair_kl = batch_kl(a, pairwise_kl(m))
    exp_neg_kl = np.exp(-pair_kl)
    phi = a.phi.copy()
    batches = a.batches
    n_comp = m.n_components
    w = m.weights
    h_c = label_entropy(class_marginal(m))

    t, s = _batch_terms(phi, exp_neg_kl)
    trace = [h_c - float(t.sum())]
    converged = False
    sweeps = 0
    # Warm-started per-component step sizes; grown after accepted updates,
    # shrunk when a whole line search fails.
    eta_mem = np.ones((m.num_classes, n_comp))
    for _ in range(max_iter):
        sweeps += 1
        for c in range(m.num_classes):
            gcomp = batches[:, c]
            pos = phi[:, c] > 0
            npos = np.bincount(gcomp[pos], minlength=n_comp)
            active = (npos >= 2) & (w > 0)
            if not active.any():
                continue

            # Fresh gradient for this column; direction fixed during halving.
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(phi > 0, phi / s, 0.0)
                log_term = np.where(pos, np.log(s[:, c]) - np.log(phi[:, c]), 0.0)
            grad = np.where(pos, 1.0 - log_term - np.einsum("mq,mq->m", ratio, exp_neg_kl[:, :, c]), 0.0)
            gsum = np.bincount(gcomp[pos], weights=grad[pos], minlength=n_comp)
            gmean = gsum / np.maximum(npos, 1)
            # Centering is exact: a per-group constant cancels in the rescale.
            direction = np.where(pos, -(grad - gmean[gcomp]), 0.0)
            steepness = np.zeros(n_comp)
            np.maximum.at(steepness, gcomp[pos], np.abs(direction[pos]))
            active &= steepness > 0.0
            if not active.any():
                continue

            cur = np.bincount(gcomp, weights=t.sum(axis=1), minlength=n_comp)
            eta = eta_mem[c].copy()
            acc_eta = np.zeros(n_comp)
            for _halving in range(_MAX_HALVINGS):
                step = eta[gcomp] * direction
                zmax = np.full(n_comp, -np.inf)
                np.maximum.at(zmax, gcomp[pos], step[pos])
                safe = np.where(pos, np.maximum(step - zmax[gcomp], -700.0), 0.0)
                cand = np.where(pos, phi[:, c] * np.exp(safe), 0.0)
                csum = np.bincount(gcomp, weights=cand, minlength=n_comp)
                scale = np.divide(w, csum, out=np.zeros(n_comp), where=csum > 0)
                cand *= scale[gcomp]

                delta = cand - phi[:, c]
                s_trial = s + delta[:, None] * exp_neg_kl[:, :, c]
                phi_trial = phi.copy()
                phi_trial[:, c] = cand
                t_trial = _terms_from(phi_trial, s_trial)
                new = np.bincount(gcomp, weights=t_trial.sum(axis=1), minlength=n_comp)

                improved = active & (new > cur)
                if improved.any():
                    take = improved[gcomp]
                    phi[take, c] = cand[take]
                    s[take] = s_trial[take]
                    t[take] = t_trial[take]
                    cur = np.bincount(gcomp, weights=t.sum(axis=1), minlength=n_comp)
                    acc_eta[improved] = eta[improved]
                    active &= ~improved
                if not active.any():
                    break
                eta[active] *= 0.5
            accepted = acc_eta > 0
            eta_mem[c] = np.where(
                accepted,
                np.minimum(acc_eta * 4.0, 1e9),
                np.maximum(eta_mem[c] * 0.25, 1e-12),
            )

        trace.append(h_c - float(t.sum()))
        if trace[-2] - trace[-1] <= tol * max(1.0, abs(trace[-2])):
            converged = True
            break

    return UpperBoundResult(
        value=trace[-1],
        iterations=sweeps,
        converged=converged,
        objective_trace=np.array(trace),
        assignment=a.with_phi(phi),
    )


def upper_bound_mi(
    m: LabeledMixture,
    div: DivergenceMatrices | None = None,
    mode: str | BatchMode = "auto",
    *,
    tol: float = 1e-9,
    max_iter: int = 500,
    full_cap: int = FULL_CAP,
    matched_threshold: int = MATCHED_THRESHOLD,
) -> UpperBoundResult:
    """Build batches, minimize, and return the tightened bound.

    ``mode="auto"`` picks FULL when the combination count stays within
    ``matched_threshold`` and MATCHED beyond that, where the full problem
    gets expensive.
    """
    kl_matrix = div.kl if div is not None else pairwise_kl(m)
    counts = [len(ix) for ix in _class_index_lists(m)]
    n_full = int(np.prod(counts))
    if mode == "auto":
        mode = BatchMode.FULL if n_full <= matched_threshold else BatchMode.MATCHED
    mode = BatchMode(mode)
    if mode is BatchMode.FULL:
        a = build_batches_full(m, cap=full_cap)
    else:
        a = build_batches_matched(m, div)
    return minimize_upper_bound(m, a, tol=tol, max_iter=max_iter, pair_kl=batch_kl(a, kl_matrix))


def randomize_phi(a: VariationalAssignment, m: LabeledMixture, rng: np.random.Generator) -> VariationalAssignment:
    """A random feasible phi on the same batch structure.

    Useful for probing the bound away from the optimum: any feasible phi
    still upper-bounds the mutual information.
    """
    phi = np.empty_like(a.phi)
    n_comp = m.n_components
    for c in range(m.num_classes):
        gcomp = a.batches[:, c]
        u = rng.random(a.n_batches)
        sums = np.bincount(gcomp, weights=u, minlength=n_comp)
        scale = np.divide(m.weights, sums, out=np.zeros(n_comp), where=sums > 0)
        phi[:, c] = u * scale[gcomp]
    return a.with_phi(phi)


def phi_csv(a: VariationalAssignment) -> str:
    """CSV dump of the batch structure and phi, for debugging."""
    n_classes = a.batches.shape[1]
    header = "batch," + ",".join(
        f"comp_c{c + 1},phi_c{c + 1}" for c in range(n_classes)
    )
    lines = [header]
    for b in range(a.n_batches):
        cells = []
        for c in range(n_classes):
            cells.append(str(int(a.batches[b, c])))
            cells.append(format(a.phi[b, c], ".12g"))
        lines.append(f"{b}," + ",".join(cells))
    return "\n".join(lines) + "\n"


def trace_csv(result: UpperBoundResult) -> str:
    """CSV dump of the objective trace (one row per sweep)."""
    lines = ["sweep,objective"]
    for k, v in enumerate(result.objective_trace):
        lines.append(f"{k},{format(v, '.12g')}")
    return "\n".join(lines) + "\n"
