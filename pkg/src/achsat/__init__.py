"""Clause-choice (Achlioptas) processes on random k-SAT.

Simulates per-step selection among ell candidate clauses under sign-profile
rules, certifies satisfiability of the grown formula through a 2-SAT
projection and an SCC test on its implication digraph, and evaluates the
closed-form certified thresholds alpha(k, ell) = 1/Q together with their
branching-process tail bounds.
"""

__version__ = "0.1.0"

from .analytics import (
    MeanMatrix,
    SpectralData,
    TailConstants,
    ThresholdReport,
    TypeFrequencies,
    certified_alpha,
    comparison_table,
    first_moment_bound,
    frequencies,
    mean_matrix,
    minimal_choices,
    q_parameter,
    spectral_data,
    tail_constants,
    threshold_alpha,
)
from .branching import (
    GwConfig,
    GwOutcome,
    expected_total_progeny,
    run_ensemble,
    simulate_gw,
    symmetric_mean_matrix,
    tail_curve,
)
from .clauses import (
    Clause,
    ClassMasses,
    SignClass,
    class_masses,
    classify,
    positive_count,
    sample_clause,
    sample_clause_block,
)
from .digraph import (
    BicycleCount,
    ImplicationDigraph,
    ResourceLimitError,
    SccPartition,
    build_digraph,
    count_bicycles,
    extract_assignment,
    is_satisfiable,
    max_reachable_set_size,
    strongly_connected_components,
)
from .harness import (
    ExperimentConfig,
    SweepPoint,
    SweepResult,
    TrialOutcome,
    empirical_threshold,
    estimate_sat_probability,
    export_dimacs,
    parse_dimacs,
    run_trial,
    sweep_alpha,
    wilson_interval,
)
from .oracle import brute_force_2sat, brute_force_ksat, verify_projection_soundness
from .projection import PairType, TwoClause, project, project_mirror, two_clause_type
from .rules import (
    RuleKind,
    RuleSpec,
    RunState,
    Selection,
    flip_all_signs,
    init_run_state,
    select,
)
