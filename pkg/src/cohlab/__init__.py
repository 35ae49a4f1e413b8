"""Discrete coherence and entanglement monotones.

Rank-style resource counts (Schmidt rank, coherence number), the
k-concurrence and coherence-concurrence families that witness them,
convex-roof estimators for mixed states, coherence-to-entanglement
conversion bounds, and closed-form resource accounting for amplitude
amplification.
"""

from .errors import ArgumentError, ValidationError
from .linalg import (
    SpectrumResult,
    as_complex_matrix,
    binomial,
    compound_matrix,
    elementary_symmetric,
    elementary_symmetric_all,
    frobenius,
    is_hermitian,
    psd_project,
    svd,
)
from .states import (
    Decomposition,
    DensityMatrix,
    IncoherentChannel,
    PureState,
    apply_channel,
    apply_selective,
    as_density,
    as_pure,
    attach_ancilla,
    attach_ancilla_pure,
    density_from,
    density_from_json,
    density_to_json,
    incoherent_channel,
    load_state,
    make_density,
    make_pure,
    pure_from_json,
    pure_to_json,
    purity,
    random_density,
    random_incoherent_channel,
    random_pure,
    save_state,
)
from .entanglement import (
    BipartitePure,
    ConcurrenceReport,
    as_bipartite,
    concurrence_chain,
    concurrence_roof_profile,
    g_concurrence_pure,
    k_concurrence_mixed,
    k_concurrence_pure,
    k_concurrence_via_compound,
    maclaurin_chain,
    schmidt_coeffs,
    schmidt_coefficients,
    schmidt_rank,
)
from .coherence import (
    CoherenceNumberResult,
    CoherenceReport,
    FeasibilityCertificate,
    branch_certificate,
    ccN_mixed,
    ccN_pure,
    cck_pure_analog,
    certificate_ensemble,
    coherence_concurrence_mixed,
    coherence_concurrence_pure,
    coherence_g_concurrence_mixed,
    coherence_g_concurrence_pure,
    coherence_k_concurrence_pure,
    coherence_number,
    coherence_rank,
    coherence_report,
    feasibility_at_k,
    is_incoherent,
    l1_coherence,
    relative_entropy_coherence,
)
from .convex_roof import (
    CoherenceProductMeasure,
    KConcurrenceMeasure,
    PairProductMeasure,
    RoofEstimate,
    RoofMeasure,
    RoofOptions,
    minimize_roof,
)
from .conversion import (
    ConversionOutcome,
    SpechtBoundReport,
    conversion_unitary,
    convert,
    convert_pure,
    lemma1_check,
    prefactor_k2,
    prefactor_k3,
    selective_schmidt_ranks,
    specht_ratio,
    theorem2_chain,
    theorem3_verify,
    theorem4_bounds,
)
from .grover import (
    CompressedGroverState,
    CostPerformance,
    CriticalIteration,
    GroverParams,
    TrajectoryPoint,
    alpha_r,
    analytic_statevector,
    ccN_closed_form,
    ccN_derivative,
    ccN_from_probability,
    cost_performance,
    critical_iteration,
    dense_trajectory,
    grover_angle,
    grover_coherence_number,
    grover_state,
    statevector_deviation,
    statevector_simulate,
    success_probability,
    trajectory,
    trajectory_csv_text,
)
from .suites import SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "ValidationError",
    "SpectrumResult",
    "as_complex_matrix",
    "binomial",
    "compound_matrix",
    "elementary_symmetric",
    "elementary_symmetric_all",
    "frobenius",
    "is_hermitian",
    "psd_project",
    "svd",
    "Decomposition",
    "DensityMatrix",
    "IncoherentChannel",
    "PureState",
    "apply_channel",
    "apply_selective",
    "as_density",
    "as_pure",
    "attach_ancilla",
    "attach_ancilla_pure",
    "density_from",
    "density_from_json",
    "density_to_json",
    "incoherent_channel",
    "load_state",
    "make_density",
    "make_pure",
    "pure_from_json",
    "pure_to_json",
    "purity",
    "random_density",
    "random_incoherent_channel",
    "random_pure",
    "save_state",
    "BipartitePure",
    "ConcurrenceReport",
    "as_bipartite",
    "concurrence_chain",
    "concurrence_roof_profile",
    "g_concurrence_pure",
    "k_concurrence_mixed",
    "k_concurrence_pure",
    "k_concurrence_via_compound",
    "maclaurin_chain",
    "schmidt_coeffs",
    "schmidt_coefficients",
    "schmidt_rank",
    "CoherenceNumberResult",
    "CoherenceReport",
    "FeasibilityCertificate",
    "branch_certificate",
    "ccN_mixed",
    "ccN_pure",
    "cck_pure_analog",
    "certificate_ensemble",
    "coherence_concurrence_mixed",
    "coherence_concurrence_pure",
    "coherence_g_concurrence_mixed",
    "coherence_g_concurrence_pure",
    "coherence_k_concurrence_pure",
    "coherence_number",
    "coherence_rank",
    "coherence_report",
    "feasibility_at_k",
    "is_incoherent",
    "l1_coherence",
    "relative_entropy_coherence",
    "CoherenceProductMeasure",
    "KConcurrenceMeasure",
    "PairProductMeasure",
    "RoofEstimate",
    "RoofMeasure",
    "RoofOptions",
    "minimize_roof",
    "ConversionOutcome",
    "SpechtBoundReport",
    "conversion_unitary",
    "convert",
    "convert_pure",
    "lemma1_check",
    "prefactor_k2",
    "prefactor_k3",
    "selective_schmidt_ranks",
    "specht_ratio",
    "theorem2_chain",
    "theorem3_verify",
    "theorem4_bounds",
    "CompressedGroverState",
    "CostPerformance",
    "CriticalIteration",
    "GroverParams",
    "TrajectoryPoint",
    "alpha_r",
    "analytic_statevector",
    "ccN_closed_form",
    "ccN_derivative",
    "ccN_from_probability",
    "cost_performance",
    "critical_iteration",
    "dense_trajectory",
    "grover_angle",
    "grover_coherence_number",
    "grover_state",
    "statevector_deviation",
    "statevector_simulate",
    "success_probability",
    "trajectory",
    "trajectory_csv_text",
    "SuiteReport",
    "run_suite",
]
