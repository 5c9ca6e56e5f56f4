"""Directed content-transfer (transfer entropy) estimation between
timestamped content streams, with binless k-nearest-neighbor estimators,
synthetic ground-truth benchmarks, and ranked predictive-link evaluation.
"""

from .estimators import (
    EstimateResult,
    EstimatorConfig,
    EstimationError,
    JointSamples,
    digamma,
    jitter,
    ksg_cmi,
    ksg_mi,
    local_cmi,
    local_cmi_values,
    subsampled_estimate,
)
from .graph import EdgeScore, RankingEvaluation, auc, average_rank_fusion, score_all_pairs
from .synthgen import (
    GaussianSpec,
    PlantedEdge,
    PlantedNetworkSpec,
    analytic_gaussian_cmi,
    analytic_gaussian_mi,
    gaussian_samples,
    permute_null,
    planted_streams,
    switching_scenario,
)
from .triples import Event, EventStream, TripleSet, build_triples, self_pairs

__all__ = [
    "EstimateResult",
    "EstimatorConfig",
    "EstimationError",
    "JointSamples",
    "digamma",
    "jitter",
    "ksg_cmi",
    "ksg_mi",
    "local_cmi",
    "local_cmi_values",
    "subsampled_estimate",
    "EdgeScore",
    "RankingEvaluation",
    "auc",
    "average_rank_fusion",
    "score_all_pairs",
    "GaussianSpec",
    "PlantedEdge",
    "PlantedNetworkSpec",
    "analytic_gaussian_cmi",
    "analytic_gaussian_mi",
    "gaussian_samples",
    "permute_null",
    "planted_streams",
    "switching_scenario",
    "Event",
    "EventStream",
    "TripleSet",
    "build_triples",
    "self_pairs",
]
