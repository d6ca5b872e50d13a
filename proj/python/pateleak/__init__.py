"""Histogram reconstruction attack on PATE's Gaussian noisy argmax."""

from ._core import (
    InitMode,
    OptimizerConfig,
    ReconstructionResult,
    StopMode,
    StopReason,
    __version__,
    classify_by_consensus,
    consensus,
    epsilon,
    estimate_distribution,
    fixtures,
    gaussian_cdf,
    gaussian_pdf,
    generate_population,
    l1_error,
    loss,
    max_queries_within_budget,
    outcome_distribution,
    outcome_jacobian,
    rdp_per_query,
    reconstruct,
    sample,
    shift_to_total,
    tertile_split,
)

__all__ = [
    "InitMode",
    "OptimizerConfig",
    "ReconstructionResult",
    "StopMode",
    "StopReason",
    "classify_by_consensus",
    "consensus",
    "epsilon",
    "estimate_distribution",
    "fixtures",
    "gaussian_cdf",
    "gaussian_pdf",
    "generate_population",
    "l1_error",
    "loss",
    "max_queries_within_budget",
    "outcome_distribution",
    "outcome_jacobian",
    "rdp_per_query",
    "reconstruct",
    "sample",
    "shift_to_total",
    "tertile_split",
]
