import enum
from dataclasses import dataclass, field, replace

from dataclasses_json import Undefined, dataclass_json

from shared.util import require

MLP_HIDDEN_LAYERS = (50, 100, 200)


class ModelKind(enum.Enum):
    LR = "LR"
    NN = "NN"


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class AdamConfig:
    step_size: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 100
    batch_size: int = 32
    optimizer: AdamConfig = field(default_factory=AdamConfig)
    seed: int = 0
    # logistic regression only
    l2_penalty: float = 1e-4
    gradient_tolerance: float = 1e-8
    hidden_layers: list[int] = field(default_factory=lambda: list(MLP_HIDDEN_LAYERS))

    def validate(self) -> "TrainConfig":
        require(self.epochs >= 1, f"epochs must be at least 1, got {self.epochs}")
        require(self.batch_size >= 1, f"batch_size must be at least 1, got {self.batch_size}")
        require(self.optimizer.step_size > 0, "Adam step size must be positive")
        require(0 <= self.optimizer.beta1 < 1 and 0 <= self.optimizer.beta2 < 1, "Adam decay rates must lie in [0, 1)")
        require(self.l2_penalty >= 0, "l2_penalty must be non-negative")
        require(all(width >= 1 for width in self.hidden_layers), "Hidden layer widths must be positive")
        return self

    def with_seed(self, seed: int) -> "TrainConfig":
        return replace(self, seed=seed)
