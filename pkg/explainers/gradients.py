from typing import Optional

import numpy as np

from models import Model, ShapeError
from shared.util import ConfigError

from .config import ExplainerConfig


def vanilla_grad(model: Model, x: np.ndarray) -> np.ndarray:
    return np.asarray(model.input_gradient(x), dtype=np.float64)


def smoothgrad(model: Model, x: np.ndarray, cfg: ExplainerConfig, seed: int) -> np.ndarray:
    noise_std = cfg.smoothgrad.noise_std
    if noise_std < 0:
        raise ConfigError(f"smoothgrad.noise_std must be non-negative, got {noise_std}")
    if cfg.smoothgrad.samples < 1:
        raise ConfigError("smoothgrad.samples must be at least 1")
    if noise_std == 0:
        return vanilla_grad(model, x)
    rng = np.random.default_rng(seed)
    noisy = x[None, :] + rng.normal(0.0, noise_std, size=(cfg.smoothgrad.samples, len(x)))
    return np.asarray(model.input_gradient(noisy)).mean(axis=0)


def integrated_gradients(
    model: Model,
    x: np.ndarray,
    cfg: ExplainerConfig,
    steps: Optional[int] = None,
) -> np.ndarray:
    """Midpoint Riemann sum of the path integral from the baseline to x."""
    steps = cfg.intgrad.steps if steps is None else steps
    if steps < 1:
        raise ConfigError(f"intgrad.steps must be at least 1, got {steps}")
    baseline = np.zeros_like(x) if cfg.intgrad.baseline is None else np.asarray(cfg.intgrad.baseline, dtype=np.float64)
    if baseline.shape != x.shape:
        raise ShapeError(f"Baseline has shape {baseline.shape}, instance has {x.shape}")
    alphas = (np.arange(steps) + 0.5) / steps
    path = baseline[None, :] + alphas[:, None] * (x - baseline)[None, :]
    return (x - baseline) * np.asarray(model.input_gradient(path)).mean(axis=0)
