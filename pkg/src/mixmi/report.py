"""One-stop evaluation of every bound and estimator for a mixture.

:func:`compute_report` runs the divergence matrices once and feeds them to
the three estimators, both tight bounds, and the entropy-derived
baselines; optionally it adds a Monte Carlo or quadrature reference and
the error-probability translations of that reference.  Results are
collected in :class:`MiReport`, which also echoes the configuration and
per-stage timings.

CSV emission is locale-independent (period decimal separator, fixed column
order, 12 significant digits) and carries no timing columns, so a rerun
with the same flags and seed is byte-identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import baseline_bounds
from .divergences import pairwise_matrices
from .estimators import MiMethod, estimate_mi
from .lower_bound import lower_bound_mi
from .mixture import LabeledMixture, class_marginal, label_entropy
from .oracles import mc_mutual_information, quadrature_mutual_information
from .pe import fano_lower_pe, hu_upper_pe
from .upper_bound import upper_bound_mi

__all__ = ["MiReport", "compute_report", "SWEEP_COLUMNS", "reports_to_csv", "format_value"]

# The pinned sweep-CSV schema: values in nats, Pe columns dimensionless.
SWEEP_COLUMNS = [
    "sigma",
    "H_C",
    "I_lb_Calpha",
    "I_ub_KL",
    "I_hat_KL",
    "I_hat_Calpha",
    "I_hat_D",
    "I_lb_2H",
    "I_ub_2H",
    "I_mc",
    "I_mc_se",
    "Pe_fano",
    "Pe_hu",
]

BOUND_ORDER_TOL = 1e-9


@dataclass(frozen=True)
class MiReport:
    """All quantities for one mixture, in nats (Pe values dimensionless)."""

    h_c: float
    i_lb_calpha: float
    i_ub_kl: float
    i_hat_kl: float
    i_hat_calpha: float
    i_hat_d: float
    i_lb_2h: float
    i_ub_2h: float
    i_mc: float = math.nan  # oracle value (MC or quadrature), nan when off
    i_mc_se: float = math.nan
    pe_fano: float = math.nan
    pe_hu: float = math.nan
    sigma: float = math.nan
    # configuration echo
    alpha: float = 0.5
    ub_mode: str = "auto"
    lb_alphas: tuple = ()
    oracle: str = "none"
    n_samples: int = 0
    seed: int = 0
    tol: float = 1e-9
    max_iter: int = 500
    ub_converged: bool = True
    ub_iterations: int = 0
    timings: dict = field(default_factory=dict)

    def csv_values(self) -> list[float]:
        return [
            self.sigma,
            self.h_c,
            self.i_lb_calpha,
            self.i_ub_kl,
            self.i_hat_kl,
            self.i_hat_calpha,
            self.i_hat_d,
            self.i_lb_2h,
            self.i_ub_2h,
            self.i_mc,
            self.i_mc_se,
            self.pe_fano,
            self.pe_hu,
        ]


def format_value(x: float) -> str:
    return format(float(x), ".12g")


def reports_to_csv(reports) -> str:
    """Render reports as the pinned CSV schema (header + one row each)."""
    lines = [",".join(SWEEP_COLUMNS)]
    for r in reports:
        lines.append(",".join(format_value(v) for v in r.csv_values()))
    return "\n".join(lines) + "\n"


def compute_report(
    m: LabeledMixture,
    *,
    sigma: float = math.nan,
    alpha: float = 0.5,
    ub_mode: str = "auto",
    lb_alphas="auto",
    oracle: str = "none",
    n_samples: int = 100_000,
    seed: int = 0,
    tol: float = 1e-9,
    max_iter: int = 500,
    quad_points: int = 401,
) -> MiReport:
    """Compute every bound/estimator for one mixture.

    ``oracle`` is one of ``"none"``, ``"mc"`` or ``"quadrature"``; when a
    reference value is available and the problem is binary, the Fano and
    Hu error-probability translations of that reference are filled in.
    """
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    div = pairwise_matrices(m, alpha)
    timings["divergences"] = time.perf_counter() - t0

    h_c = label_entropy(class_marginal(m))

    t0 = time.perf_counter()
    hat_kl = estimate_mi(m, div, MiMethod.KL).value
    hat_ca = estimate_mi(m, div, MiMethod.CHERNOFF).value
    hat_d = estimate_mi(m, div, MiMethod.COMBINED).value
    timings["estimators"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lb = lower_bound_mi(m, lb_alphas)
    timings["lower_bound"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ub = upper_bound_mi(m, div, ub_mode, tol=tol, max_iter=max_iter)
    timings["upper_bound"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lb_2h, ub_2h = baseline_bounds(m, div)
    timings["baselines"] = time.perf_counter() - t0

    if lb.value > ub.value + BOUND_ORDER_TOL:
        raise RuntimeError(
            f"bound ordering violated: lower {lb.value!r} > upper {ub.value!r}"
        )

    i_ref = math.nan
    i_ref_se = math.nan
    pe_fano = math.nan
    pe_hu = math.nan
    t0 = time.perf_counter()
    if oracle == "mc":
        res = mc_mutual_information(m, n_samples, seed)
        i_ref, i_ref_se = res.value, res.std_error
    elif oracle == "quadrature":
        res = quadrature_mutual_information(m, quad_points)
        i_ref, i_ref_se = res.value, res.std_error
    elif oracle != "none":
        raise ValueError(f"unknown oracle {oracle!r}")
    timings["oracle"] = time.perf_counter() - t0

    if not math.isnan(i_ref) and m.num_classes == 2:
        probs = class_marginal(m)
        pe_fano = fano_lower_pe(i_ref, probs)
        pe_hu = hu_upper_pe(i_ref, probs)

    return MiReport(
        h_c=h_c,
        i_lb_calpha=lb.value,
        i_ub_kl=ub.value,
        i_hat_kl=hat_kl,
        i_hat_calpha=hat_ca,
        i_hat_d=hat_d,
        i_lb_2h=lb_2h,
        i_ub_2h=ub_2h,
        i_mc=i_ref,
        i_mc_se=i_ref_se,
        pe_fano=pe_fano,
        pe_hu=pe_hu,
        sigma=sigma,
        alpha=alpha,
        ub_mode=str(ub_mode),
        lb_alphas=tuple(float(a) for a in lb.alphas),
        oracle=oracle,
        n_samples=int(n_samples) if oracle == "mc" else 0,
        seed=seed,
        tol=tol,
        max_iter=max_iter,
        ub_converged=ub.converged,
        ub_iterations=ub.iterations,
        timings=timings,
    )
