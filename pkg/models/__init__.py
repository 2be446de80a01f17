from typing import Protocol, Union

import numpy as np

from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .config import MLP_HIDDEN_LAYERS, AdamConfig, ModelKind, TrainConfig
from .errors import CheckpointError, DegenerateLabelsError, DivergenceError, ShapeError, UnsupportedModelError
from .linear import LinearModel, train_logistic
from .mlp import MlpModel, initialize_mlp, train_mlp


class Model(Protocol):
    @property
    def d(self) -> int:
        ...

    def predict_proba(self, x):
        ...

    def input_gradient(self, x):
        ...


def predict_proba(model: Model, x) -> Union[float, np.ndarray]:
    return model.predict_proba(x)


def classify(model: Model, x) -> Union[int, np.ndarray]:
    return (np.asarray(model.predict_proba(x)) >= 0.5).astype(np.int64)


def input_gradient(model: Model, x) -> np.ndarray:
    return model.input_gradient(x)


def ground_truth_weights(model: Model) -> np.ndarray:
    """Absolute coefficients on the standardized feature scale; only linear models have them."""
    if not isinstance(model, LinearModel):
        raise UnsupportedModelError(f"Ground-truth feature importances need a linear model, got {type(model).__name__}")
    return np.abs(model.coefficients)


def train_model(kind: ModelKind, X: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> Union[LinearModel, MlpModel]:
    return train_logistic(X, y, cfg) if kind == ModelKind.LR else train_mlp(X, y, cfg)


def accuracy(model: Model, X: np.ndarray, y: np.ndarray) -> float:
    if len(y) == 0:
        return float("nan")
    return float(np.mean(classify(model, X) == np.asarray(y)))


__all__ = (
    "AdamConfig",
    "Checkpoint",
    "CheckpointError",
    "DegenerateLabelsError",
    "DivergenceError",
    "LinearModel",
    "MLP_HIDDEN_LAYERS",
    "MlpModel",
    "Model",
    "ModelKind",
    "ShapeError",
    "TrainConfig",
    "UnsupportedModelError",
    "accuracy",
    "classify",
    "ground_truth_weights",
    "initialize_mlp",
    "input_gradient",
    "load_checkpoint",
    "predict_proba",
    "save_checkpoint",
    "train_logistic",
    "train_mlp",
    "train_model",
)
