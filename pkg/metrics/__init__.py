from .config import MetricConfig, MetricName
from .fidelity import ground_truth_fidelity, prediction_gap, top_k_indices
from .robustness import inconsistency, instability, replicate_seeds
from .sparsity import complexity

__all__ = (
    "MetricConfig",
    "MetricName",
    "complexity",
    "ground_truth_fidelity",
    "inconsistency",
    "instability",
    "prediction_gap",
    "replicate_seeds",
    "top_k_indices",
)
