"""Ensemble MCMC with statistical agents coupled by a per-timestep random
graph, plus baseline samplers, benchmark targets and diagnostics."""

from .diagnostics import (
    MetricReport,
    autocovariance,
    compute_metric_report,
    decay_time,
    distance_metrics,
    estimate_moments,
    region_masses,
    rejection_rate,
    tail_fractions,
)
from .engine import (
    ChainConfig,
    ChainRecord,
    EnsembleState,
    dump_samples,
    initialize,
    run_chain,
    suburban_sweep,
)
from .graphs import (
    GraphEnsembleSpec,
    GraphKind,
    draw_adjacency,
    effective_dimension,
    lattice_edge_set,
    neighbors,
)
from .harness import (
    ExperimentConfig,
    SweepPoint,
    TrialRecord,
    aggregate,
    derive_trial_seed,
    load_config,
    parse_config,
    run_sweep,
    run_trials,
)
from .kernel import (
    KernelParams,
    ScalarProposalContext,
    UpdateMode,
    acceptance_log_ratio,
    conditional_form,
    log_kernel_density,
    propose_agent,
)
from .slice_baseline import SliceParams, slice_gibbs_chain
from .targets import (
    GaussianMixture,
    Target,
    direct_sample,
    make_banana,
    make_barrier_gmm,
    make_random_landscape,
    make_symmetric_mixture,
    make_target,
    true_moments,
)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig", "ChainRecord", "EnsembleState", "ExperimentConfig",
    "GaussianMixture", "GraphEnsembleSpec", "GraphKind", "KernelParams",
    "MetricReport", "ScalarProposalContext", "SliceParams", "SweepPoint",
    "Target", "TrialRecord", "UpdateMode",
    "acceptance_log_ratio", "aggregate", "autocovariance",
    "compute_metric_report", "conditional_form", "decay_time",
    "derive_trial_seed", "direct_sample", "distance_metrics", "draw_adjacency",
    "dump_samples", "effective_dimension", "estimate_moments", "initialize",
    "lattice_edge_set", "load_config", "log_kernel_density", "make_banana",
    "make_barrier_gmm", "make_random_landscape", "make_symmetric_mixture",
    "make_target", "neighbors", "parse_config", "propose_agent",
    "region_masses", "rejection_rate", "run_chain", "run_sweep", "run_trials",
    "slice_gibbs_chain", "suburban_sweep", "tail_fractions", "true_moments",
]
