"""Cycle spectra of sparse random graphs.

Samplers for the standard sparse models, exact cycle-length
enumeration with certificates, the chord-switching machinery behind
long-cycle interval arguments, limiting probabilities with certified
tail bounds, and a reproducible Monte Carlo harness.
"""
from .graphs import (
    Graph,
    SimplifyReport,
    build_graph,
    from_edge_list_text,
    simplify,
    to_edge_list_text,
    validate_cycle,
)
from .samplers import (
    CouplingOutcome,
    SeededStream,
    couple_contract,
    cycle_edges,
    sample_binomial,
    sample_configuration_model,
    sample_cycle,
    sample_ham_plus_binomial,
    sample_ham_plus_ham,
    sample_ham_plus_matching,
    sample_regular_simple,
    sprinkle,
    uniform_perfect_matching,
)
from .switching import (
    ChordContext,
    ExposureOutcome,
    canonical_chord,
    chord_gap,
    conflicting_chords,
    eligible_chord_count,
    enumerate_eligible_chords,
    is_eligible_chord,
    partner_chords,
    partner_sets_intersect,
    partner_union_graph,
    shortcut_cycle,
    staged_binomial_exposure,
    staged_matching_exposure,
    switch_cycles,
)
from .spectrum import (
    CycleSpectrum,
    circumference,
    count_short_cycles,
    cycle_length_set,
    decide_all_lengths,
    has_all_lengths,
    has_cycle_of_length,
)
from .theory import (
    CertifiedProduct,
    lambda_k,
    poisson_joint_all_nonzero,
    regular_lower_bound,
    supercritical_window,
    theta,
)
from .harness import (
    CellResult,
    ExperimentConfig,
    ExperimentResult,
    parse_config,
    run_experiment,
    summarize,
    write_output,
)
from .cli import cli_main

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "SimplifyReport",
    "build_graph",
    "from_edge_list_text",
    "simplify",
    "to_edge_list_text",
    "validate_cycle",
    "CouplingOutcome",
    "SeededStream",
    "couple_contract",
    "cycle_edges",
    "sample_binomial",
    "sample_configuration_model",
    "sample_cycle",
    "sample_ham_plus_binomial",
    "sample_ham_plus_ham",
    "sample_ham_plus_matching",
    "sample_regular_simple",
    "sprinkle",
    "uniform_perfect_matching",
    "ChordContext",
    "ExposureOutcome",
    "canonical_chord",
    "chord_gap",
    "conflicting_chords",
    "eligible_chord_count",
    "enumerate_eligible_chords",
    "is_eligible_chord",
    "partner_chords",
    "partner_sets_intersect",
    "partner_union_graph",
    "shortcut_cycle",
    "staged_binomial_exposure",
    "staged_matching_exposure",
    "switch_cycles",
    "CycleSpectrum",
    "circumference",
    "count_short_cycles",
    "cycle_length_set",
    "decide_all_lengths",
    "has_all_lengths",
    "has_cycle_of_length",
    "CertifiedProduct",
    "lambda_k",
    "poisson_joint_all_nonzero",
    "regular_lower_bound",
    "supercritical_window",
    "theta",
    "CellResult",
    "ExperimentConfig",
    "ExperimentResult",
    "parse_config",
    "run_experiment",
    "summarize",
    "write_output",
    "cli_main",
]
