from typing import Optional

import numpy as np

from models import Model
from shared.util import ConfigError

from .config import MetricConfig


def _ranking_scores(v: np.ndarray, signed: bool) -> np.ndarray:
    return np.asarray(v, dtype=np.float64) if signed else np.abs(np.asarray(v, dtype=np.float64))


def top_k_indices(v, k: int, signed: bool = False) -> tuple[int, ...]:
    """Indices of the k largest |v_i| (or v_i when ``signed``), ties going to the smaller index."""
    scores = _ranking_scores(v, signed)
    if not 1 <= k <= len(scores):
        raise ConfigError(f"k must lie in [1, {len(scores)}], got {k}")
    return tuple(int(i) for i in np.argsort(-scores, kind="stable")[:k])


def ground_truth_fidelity(w, omega, k: int, signed: bool = False) -> float:
    if len(w) != len(omega):
        raise ConfigError(f"Explanation has {len(w)} entries, ground truth has {len(omega)}")
    return len(set(top_k_indices(w, k, signed)) & set(top_k_indices(omega, k, signed))) / k


def prediction_gap(
    model: Model,
    x: np.ndarray,
    w: np.ndarray,
    cfg: MetricConfig,
    seed: int,
    onehot_mask: Optional[np.ndarray] = None,
) -> float:
    """
    Mean absolute change of h over ``m_pred_gap`` draws that add N(0, sigma^2) noise to every coordinate
    outside top_k(w). With ``noise_on_onehot`` disabled, one-hot coordinates are left untouched as well.
    """
    x = np.asarray(x, dtype=np.float64)
    perturbed = np.ones(len(x), dtype=bool)
    perturbed[list(top_k_indices(w, cfg.k, cfg.signed_importances))] = False
    if onehot_mask is not None and not cfg.noise_on_onehot:
        perturbed &= ~np.asarray(onehot_mask, dtype=bool)
    if cfg.sigma == 0 or not perturbed.any():
        return 0.0

    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, cfg.sigma, size=(cfg.m_pred_gap, len(x))) * perturbed[None, :]
    h = float(model.predict_proba(x))
    return float(np.mean(np.abs(h - np.asarray(model.predict_proba(x[None, :] + noise)))))
