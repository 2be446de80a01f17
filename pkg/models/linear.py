from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from .config import ModelKind, TrainConfig
from .util import as_batch, check_training_data, squash, unbatch


@dataclass(frozen=True, eq=False)
class LinearModel:
    coefficients: np.ndarray
    intercept: float

    kind = ModelKind.LR

    @property
    def d(self) -> int:
        return len(self.coefficients)

    def predict_proba(self, x):
        X, single = as_batch(x, self.d)
        return unbatch(squash(X @ self.coefficients + self.intercept), single)

    def input_gradient(self, x):
        X, single = as_batch(x, self.d)
        h = squash(X @ self.coefficients + self.intercept)
        return unbatch((h * (1.0 - h))[:, None] * self.coefficients[None, :], single)


def train_logistic(X: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> LinearModel:
    """
    Minimizes mean binary cross entropy plus ``l2_penalty / 2 * |w|^2`` (intercept unpenalized) with
    L-BFGS, stopping at ``gradient_tolerance`` or after ``epochs`` full-batch iterations.
    """
    cfg.validate()
    X, y = check_training_data(X, y)
    n, d = X.shape

    def objective(params: np.ndarray) -> tuple[float, np.ndarray]:
        w, b = params[:-1], params[-1]
        z = X @ w + b
        loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * cfg.l2_penalty * (w @ w)
        residual = (expit(z) - y) / n
        return loss, np.concatenate([X.T @ residual + cfg.l2_penalty * w, [residual.sum()]])

    result = minimize(
        objective,
        np.zeros(d + 1),
        jac=True,
        method="L-BFGS-B",
        options={"gtol": cfg.gradient_tolerance, "ftol": 0.0, "maxiter": cfg.epochs},
    )
    return LinearModel(coefficients=np.array(result.x[:-1]), intercept=float(result.x[-1]))
