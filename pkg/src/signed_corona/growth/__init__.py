"""Corona graphs grown from a seed: construction, counters, degrees, spectra."""

from .counts import (
    ClosedForm,
    GrowthTrace,
    KFactors,
    SeedProfile,
    StepCounts,
    closed_form_counts,
    k_factors,
    marked_count_sequence,
    next_marked_counts,
    trace,
    trace_profile,
    triad_increment,
)
from .degrees import (
    DivergenceReport,
    NodeDescriptor,
    cumulative,
    degree_classes,
    degree_distribution,
    divergence_report,
    marginal,
    measured_degree_distribution,
    node_degree,
    simulated_degree,
    table_born_degree,
    table_seed_degree,
)
from .generate import (
    DEFAULT_NODE_BUDGET,
    GrowthMetadata,
    check_budget,
    grow,
    grow_with_metadata,
    growth_order,
    node_budget,
)
from .spectrum import (
    BranchEntry,
    BranchSpectrum,
    ConflictReport,
    algebraic_conflict,
    apply_word,
    branch_hypotheses,
    branch_minimum,
    branch_spectrum,
    conflict_report,
    f_minus,
    f_plus,
    lemma_total,
)

__all__ = [name for name in dir() if not name.startswith("_")]
