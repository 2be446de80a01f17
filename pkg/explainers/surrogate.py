import numpy as np
from sklearn.linear_model import LinearRegression, Ridge

from models import Model
from shared.util import ConfigError

from .config import ExplainerConfig


def lime(model: Model, x: np.ndarray, cfg: ExplainerConfig, seed: int) -> np.ndarray:
    """
    Continuous tabular LIME: Gaussian perturbations around x, an exponential kernel on squared Euclidean
    distance and a weighted ridge fit of the predicted probability. The intercept is not penalized.
    """
    lime_cfg = cfg.lime
    d = len(x)
    if lime_cfg.ridge_penalty < 0:
        raise ConfigError(f"lime.ridge_penalty must be non-negative, got {lime_cfg.ridge_penalty}")
    if lime_cfg.ridge_penalty == 0 and lime_cfg.samples < d + 1:
        raise ConfigError(f"Unpenalized LIME needs at least {d + 1} samples, got {lime_cfg.samples}")

    rng = np.random.default_rng(seed)
    offsets = rng.normal(0.0, lime_cfg.perturb_std, size=(lime_cfg.samples, d))
    neighbours = x[None, :] + offsets
    kernel_width = lime_cfg.kernel_width_for(d)
    sample_weight = np.exp(-np.sum(offsets**2, axis=1) / kernel_width**2)

    surrogate = Ridge(alpha=lime_cfg.ridge_penalty) if lime_cfg.ridge_penalty > 0 else LinearRegression()
    surrogate.fit(neighbours, np.asarray(model.predict_proba(neighbours)), sample_weight=sample_weight)
    return np.asarray(surrogate.coef_, dtype=np.float64).reshape(d)
