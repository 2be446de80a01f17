import enum
from dataclasses import dataclass
from typing import Optional

from dataclasses_json import Undefined, dataclass_json

from shared.util import require


class MetricName(enum.Enum):
    ground_truth_fidelity = "ground_truth_fidelity"
    prediction_gap = "prediction_gap"
    instability = "instability"
    inconsistency = "inconsistency"
    complexity = "complexity"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def linear_only(self) -> bool:
        return self == MetricName.ground_truth_fidelity


_DISPLAY_NAMES = {
    MetricName.ground_truth_fidelity: "Ground truth",
    MetricName.prediction_gap: "Prediction gap",
    MetricName.instability: "Stability",
    MetricName.inconsistency: "Consistency",
    MetricName.complexity: "Sparsity",
}


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class MetricConfig:
    k: int = 5
    m_pred_gap: int = 1000
    sigma: float = 0.1
    m_stability: int = 5
    m_consistency: int = 5
    t: float = 0.01
    # compare signed importances in top-k and the sparsity threshold instead of magnitudes
    signed_importances: bool = False
    noise_on_onehot: bool = True

    def validate(self, d: Optional[int] = None) -> "MetricConfig":
        require(self.k >= 1, f"k must be at least 1, got {self.k}")
        require(d is None or self.k <= d, f"k={self.k} exceeds the {d} available feature(s)")
        require(self.m_pred_gap >= 1, "m_pred_gap must be at least 1")
        require(self.m_stability >= 1, "m_stability must be at least 1")
        require(self.m_consistency >= 1, "m_consistency must be at least 1")
        require(self.sigma >= 0, f"sigma must be non-negative, got {self.sigma}")
        require(self.t >= 0, f"t must be non-negative, got {self.t}")
        return self
