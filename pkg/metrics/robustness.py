from typing import Optional, Sequence

import numpy as np

from explainers import ExplainFn
from shared.seeding import mix64
from shared.util import ConfigError

from .config import MetricConfig

# separates the neighbourhood noise stream from the explanation seeds
NEIGHBOURHOOD_STREAM = 0x6E6F697365


def replicate_seeds(seed: int, count: int) -> list[int]:
    """
    The canonical seed followed by replicates 1..``count``, each mixed from the canonical seed and its
    replicate index. The harness derives the same indices from the full instance key instead.
    """
    return [seed] + [mix64(seed, replicate) for replicate in range(1, count + 1)]


def instability(
    explainer: ExplainFn,
    x: np.ndarray,
    cfg: MetricConfig,
    seed: int,
    reference: Optional[np.ndarray] = None,
    neighbour_seeds: Optional[Sequence[int]] = None,
) -> float:
    """
    Mean L1 distance between E(x), explained with the canonical ``seed``, and the explanations of
    ``m_stability`` neighbours x + N(0, sigma^2 I). Neighbour j is explained with ``neighbour_seeds[j]``,
    by default ``replicate_seeds(seed, m_stability)[1:]``.
    """
    x = np.asarray(x, dtype=np.float64)
    reference = explainer(x, seed) if reference is None else reference
    rng = np.random.default_rng(mix64(seed, NEIGHBOURHOOD_STREAM))
    neighbours = x[None, :] + rng.normal(0.0, cfg.sigma, size=(cfg.m_stability, len(x)))
    if neighbour_seeds is None:
        neighbour_seeds = replicate_seeds(seed, cfg.m_stability)[1:]
    if len(neighbour_seeds) != cfg.m_stability:
        raise ConfigError(f"Expected {cfg.m_stability} neighbour seeds, got {len(neighbour_seeds)}")
    distances = [
        np.abs(reference - explainer(neighbour, neighbour_seed)).sum()
        for neighbour, neighbour_seed in zip(neighbours, neighbour_seeds)
    ]
    return float(np.mean(distances))


def inconsistency(
    explainer: ExplainFn,
    x: np.ndarray,
    seeds: Sequence[int],
    reference: Optional[np.ndarray] = None,
) -> float:
    """Mean L1 distance between the explanation under ``seeds[0]`` and those under every later seed."""
    if len(seeds) < 2:
        raise ConfigError(f"inconsistency needs a reference seed and at least one more, got {len(seeds)}")
    x = np.asarray(x, dtype=np.float64)
    reference = explainer(x, seeds[0]) if reference is None else reference
    return float(np.mean([np.abs(reference - explainer(x, seed)).sum() for seed in seeds[1:]]))
