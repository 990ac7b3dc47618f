"""Bounds and estimators of mutual information for labeled Gaussian mixtures.

Everything computes in nats; only the error-probability module converts to
bits internally.  The typical flow::

    from mixmi import load_mixture, pairwise_matrices, estimate_mi, MiMethod

    mixture = load_mixture(open("model.json").read())
    div = pairwise_matrices(mixture, alpha=0.5)
    i_kl = estimate_mi(mixture, div, MiMethod.KL).value

or, for everything at once, :func:`mixmi.report.compute_report`.
"""

from .baselines import baseline_bounds
from .divergences import (
    DivergenceMatrices,
    NumericalConsistencyError,
    chernoff_gaussian,
    combined_distance,
    kl_gaussian,
    matrix_csv,
    pairwise_chernoff,
    pairwise_kl,
    pairwise_matrices,
)
from .estimators import MiEstimate, MiMethod, estimate_mi
from .gaussian import GaussianComponent, mahalanobis_sq
from .lower_bound import LowerBoundResult, lower_bound_mi, q_value
from .mixture import (
    LabeledMixture,
    class_marginal,
    label_entropy,
    load_mixture,
    log_mixture_density,
    save_mixture,
)
from .oracles import (
    OracleResult,
    mc_mutual_information,
    quadrature_bayes_error,
    quadrature_chernoff,
    quadrature_kl,
    quadrature_mutual_information,
)
from .pe import (
    PeResult,
    binary_entropy,
    fano_lower_pe,
    hu_upper_pe,
    inverse_binary_entropy,
    pe_bounds,
)
from .report import MiReport, compute_report, reports_to_csv
from .scenarios import (
    Scenario,
    ScenarioSpec,
    default_sigma_grid,
    generate,
    sigma_sweep,
    spec_from_json,
    spec_to_json,
)
from .upper_bound import (
    BatchMode,
    UpperBoundResult,
    VariationalAssignment,
    batch_kl,
    build_batches_full,
    build_batches_matched,
    check_assignment,
    minimize_upper_bound,
    phi_csv,
    randomize_phi,
    trace_csv,
    upper_bound_gradient,
    upper_bound_mi,
    upper_bound_objective,
)

__version__ = "0.1.0"
