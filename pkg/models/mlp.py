from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import expit

from .config import MLP_HIDDEN_LAYERS, AdamConfig, ModelKind, TrainConfig
from .errors import DivergenceError
from .util import as_batch, check_training_data, squash, unbatch


@dataclass(frozen=True, eq=False)
class MlpModel:
    """
    Fully connected network d -> 50 -> 100 -> 200 -> 1 with rectifier hidden layers and a logistic output.
    ``layer_weights[i]`` has shape (fan_in, fan_out). The rectifier derivative at exactly 0 is taken as 0.
    """

    layer_weights: tuple[np.ndarray, ...]
    layer_biases: tuple[np.ndarray, ...]

    kind = ModelKind.NN

    @property
    def d(self) -> int:
        return self.layer_weights[0].shape[0]

    @property
    def widths(self) -> tuple[int, ...]:
        return (self.d,) + tuple(w.shape[1] for w in self.layer_weights)

    def _forward(self, X: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        pre_activations = []
        a = X
        for W, b in zip(self.layer_weights[:-1], self.layer_biases[:-1]):
            z = a @ W + b
            pre_activations.append(z)
            a = np.maximum(z, 0.0)
        return pre_activations, (a @ self.layer_weights[-1] + self.layer_biases[-1])[:, 0]

    def logit(self, x):
        X, single = as_batch(x, self.d)
        return unbatch(self._forward(X)[1], single)

    def predict_proba(self, x):
        X, single = as_batch(x, self.d)
        return unbatch(squash(self._forward(X)[1]), single)

    def input_gradient(self, x):
        X, single = as_batch(x, self.d)
        pre_activations, z = self._forward(X)
        h = squash(z)
        delta = (h * (1.0 - h))[:, None] * self.layer_weights[-1][:, 0][None, :]
        for W, z_hidden in zip(reversed(self.layer_weights[:-1]), reversed(pre_activations)):
            delta = (delta * (z_hidden > 0.0)) @ W.T
        return unbatch(delta, single)


def glorot_uniform(rng: np.random.Generator, widths: Sequence[int]) -> MlpModel:
    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpModel(layer_weights=tuple(weights), layer_biases=tuple(biases))


def initialize_mlp(d: int, seed: int, hidden_layers: Sequence[int] = MLP_HIDDEN_LAYERS) -> MlpModel:
    return glorot_uniform(np.random.default_rng(seed), (d, *hidden_layers, 1))


class _Adam:
    def __init__(self, params: list[np.ndarray], cfg: AdamConfig):
        self._cfg = cfg
        self._m = [np.zeros_like(p) for p in params]
        self._v = [np.zeros_like(p) for p in params]
        self._t = 0

    def step(self, params: list[np.ndarray], grads: list[np.ndarray]):
        cfg = self._cfg
        self._t += 1
        correction1 = 1.0 - cfg.beta1**self._t
        correction2 = 1.0 - cfg.beta2**self._t
        for p, g, m, v in zip(params, grads, self._m, self._v):
            m *= cfg.beta1
            m += (1.0 - cfg.beta1) * g
            v *= cfg.beta2
            v += (1.0 - cfg.beta2) * g * g
            p -= cfg.step_size * (m / correction1) / (np.sqrt(v / correction2) + cfg.epsilon)


def _loss_and_gradients(
    weights: list[np.ndarray],
    biases: list[np.ndarray],
    X: np.ndarray,
    y: np.ndarray,
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    activations = [X]
    pre_activations = []
    for W, b in zip(weights[:-1], biases[:-1]):
        z = activations[-1] @ W + b
        pre_activations.append(z)
        activations.append(np.maximum(z, 0.0))
    z_out = (activations[-1] @ weights[-1] + biases[-1])[:, 0]
    loss = float(np.mean(np.logaddexp(0.0, z_out) - y * z_out))

    delta = ((expit(z_out) - y) / len(y))[:, None]
    grad_w = [np.empty(0)] * len(weights)
    grad_b = [np.empty(0)] * len(biases)
    for layer in reversed(range(len(weights))):
        grad_w[layer] = activations[layer].T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ weights[layer].T) * (pre_activations[layer - 1] > 0.0)
    return loss, grad_w, grad_b


def train_mlp(X: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> MlpModel:
    """
    Mini-batch Adam on mean binary cross entropy for exactly ``cfg.epochs`` epochs. Initialization and the
    per-epoch shuffles both come from ``cfg.seed``.
    """
    cfg.validate()
    X, y = check_training_data(X, y)
    rng = np.random.default_rng(cfg.seed)
    initial = glorot_uniform(rng, (X.shape[1], *cfg.hidden_layers, 1))
    weights = [w.copy() for w in initial.layer_weights]
    biases = [b.copy() for b in initial.layer_biases]
    optimizer = _Adam(weights + biases, cfg.optimizer)

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(y))
        for start in range(0, len(y), cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            loss, grad_w, grad_b = _loss_and_gradients(weights, biases, X[batch], y[batch])
            if not np.isfinite(loss):
                raise DivergenceError(f"Training diverged in epoch {epoch}: loss is {loss}")
            optimizer.step(weights + biases, grad_w + grad_b)

    return MlpModel(layer_weights=tuple(weights), layer_biases=tuple(biases))
