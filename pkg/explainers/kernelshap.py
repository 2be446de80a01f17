import numpy as np
from scipy.special import comb

from models import Model, ShapeError
from shared.util import ConfigError

from .config import ExplainerConfig


def shapley_kernel(d: int, sizes: np.ndarray) -> np.ndarray:
    sizes = np.asarray(sizes)
    return (d - 1) / (comb(d, sizes) * sizes * (d - sizes))


def all_coalitions(d: int) -> np.ndarray:
    """Every coalition except the empty and the full one, as a boolean (2^d - 2, d) matrix."""
    codes = np.arange(1, 2**d - 1, dtype=np.int64)
    return ((codes[:, None] >> np.arange(d)[None, :]) & 1).astype(bool)


def sample_coalitions(d: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Coalitions drawn with probability proportional to the Shapley kernel."""
    sizes = np.arange(1, d)
    size_mass = shapley_kernel(d, sizes) * comb(d, sizes)
    drawn_sizes = rng.choice(sizes, size=samples, p=size_mass / size_mass.sum())
    ranks = np.argsort(np.argsort(rng.random((samples, d)), axis=1), axis=1)
    return ranks < drawn_sizes[:, None]


def kernel_shap(model: Model, x: np.ndarray, cfg: ExplainerConfig, seed: int) -> np.ndarray:
    """
    Kernel SHAP against a single background point. Coalitions are enumerated exhaustively when the
    sample budget covers all of them, sampled by the Shapley kernel otherwise. The efficiency constraint
    sum(phi) = h(x) - h(background) is enforced exactly by eliminating the last attribution.
    """
    if cfg.kernelshap.background is None:
        raise ConfigError("kernelshap.background is not set")
    background = np.asarray(cfg.kernelshap.background, dtype=np.float64)
    if background.shape != x.shape:
        raise ShapeError(f"Background has shape {background.shape}, instance has {x.shape}")
    d = len(x)

    v_empty = float(model.predict_proba(background))
    v_full = float(model.predict_proba(x))
    delta = v_full - v_empty
    if d == 1:
        return np.array([delta])

    if 2**d - 2 <= cfg.kernelshap.samples:
        coalitions = all_coalitions(d)
        weights = shapley_kernel(d, coalitions.sum(axis=1))
    else:
        coalitions = sample_coalitions(d, cfg.kernelshap.samples, np.random.default_rng(seed))
        weights = np.ones(len(coalitions))

    values = np.asarray(model.predict_proba(np.where(coalitions, x[None, :], background[None, :])))
    z = coalitions.astype(np.float64)
    design = z[:, :-1] - z[:, -1:]
    target = values - v_empty - z[:, -1] * delta
    root_weights = np.sqrt(weights)
    head = np.linalg.lstsq(design * root_weights[:, None], target * root_weights, rcond=None)[0]
    return np.append(head, delta - head.sum())
