import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from dataclasses_json import Undefined, dataclass_json

from .errors import SyntheticSpecError
from .loading import dataset_from_frame
from .schema import Dataset, DatasetSchema, FeatureColumn, FeatureKind

SYNTHETIC_TARGET = "label"
SYNTHETIC_SENSITIVE = "group"
SYNTHETIC_GROUP0 = "majority"
SYNTHETIC_GROUP1 = "minority"


class LabelRule(enum.Enum):
    shared_linear = "shared_linear"
    group_dependent_nonlinear = "group_dependent_nonlinear"


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class SyntheticSpec:
    n: int = 2000
    d_continuous: int = 8
    p1: float = 0.5
    label_rule: LabelRule = LabelRule.shared_linear
    noise: float = 0.5
    # logit weights; defaults to 2 * (-1/2)^j, i.e. (2, -1, 0.5, -0.25, ...)
    weights: Optional[list[float]] = None
    interaction_scale: float = 4.0
    # hand the group column to the models as a feature, without it both groups share one input distribution
    include_sensitive: bool = False

    def validate(self) -> "SyntheticSpec":
        if self.n <= 0 or self.d_continuous <= 0:
            raise SyntheticSpecError(f"n and d_continuous must be positive, got n={self.n}, d={self.d_continuous}")
        if not 0 < self.p1 < 1:
            raise SyntheticSpecError(f"p1 must lie in (0, 1), got {self.p1}")
        if self.noise < 0:
            raise SyntheticSpecError(f"noise must be non-negative, got {self.noise}")
        if self.label_rule == LabelRule.group_dependent_nonlinear and self.d_continuous < 2:
            raise SyntheticSpecError("group_dependent_nonlinear needs at least 2 continuous features")
        if self.weights is not None and len(self.weights) != self.d_continuous:
            raise SyntheticSpecError(f"Expected {self.d_continuous} weights, got {len(self.weights)}")
        return self

    @property
    def logit_weights(self) -> np.ndarray:
        if self.weights is not None:
            return np.asarray(self.weights, dtype=np.float64)
        return 2.0 * (-0.5) ** np.arange(self.d_continuous)

    @property
    def feature_names(self) -> list[str]:
        return [f"x{j}" for j in range(self.d_continuous)]

    @property
    def dataset_schema(self) -> DatasetSchema:
        return DatasetSchema(
            target_column=SYNTHETIC_TARGET,
            positive_label=1,
            sensitive_column=SYNTHETIC_SENSITIVE,
            group0_value=SYNTHETIC_GROUP0,
            group1_value=SYNTHETIC_GROUP1,
            feature_columns=[FeatureColumn(name, FeatureKind.continuous) for name in self.feature_names],
            include_sensitive=self.include_sensitive,
        )


def synthetic_frame(spec: SyntheticSpec, seed: int) -> pd.DataFrame:
    """
    Raw synthetic table with the same columns a user CSV would have.

    ``shared_linear`` draws every label from one noisy linear rule. ``group_dependent_nonlinear`` keeps that
    rule for group 0 and gives group 1 an XOR-style rule on the product of the first two features, which no
    linear model can represent.
    """
    spec.validate()
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((spec.n, spec.d_continuous))
    groups = (rng.random(spec.n) < spec.p1).astype(np.int64)
    noise = spec.noise * rng.standard_normal(spec.n)

    score = X @ spec.logit_weights
    if spec.label_rule == LabelRule.group_dependent_nonlinear:
        score = np.where(groups == 1, spec.interaction_scale * X[:, 0] * X[:, 1], score)
    labels = (score + noise > 0).astype(np.int64)

    frame = pd.DataFrame(X, columns=spec.feature_names)
    frame[SYNTHETIC_SENSITIVE] = np.where(groups == 1, SYNTHETIC_GROUP1, SYNTHETIC_GROUP0)
    frame[SYNTHETIC_TARGET] = labels
    return frame


def generate_synthetic(spec: SyntheticSpec, seed: int) -> Dataset:
    return dataset_from_frame(synthetic_frame(spec, seed), spec.dataset_schema, source="synthetic")[0]
