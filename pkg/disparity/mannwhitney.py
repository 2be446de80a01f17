"""
Two-sided Mann-Whitney U test for small samples.

Ranks use mid-ranks, so ties are averaged. The null distribution of U is enumerated over every
labeling of the pooled ranks while C(n0 + n1, n0) <= 12870 (n0 = n1 = 8), which gives exact p-values
such as 2/252 for two completely separated samples of five. Larger samples fall back to seeded
Monte-Carlo permutations, and the tie- and continuity-corrected normal approximation is reported next
to them. The two-sided p-value is twice the smaller tail, capped at 1.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from dataclasses_json import Undefined, dataclass_json
from scipy.special import comb
from scipy.stats import norm, rankdata, tiecorrect

from shared.util import Error

EXHAUSTIVE_LIMIT = 12870
MONTE_CARLO_PERMUTATIONS = 100_000
_MONTE_CARLO_CHUNK = 2000
# U values are multiples of 1/2, anything below this is float noise
_U_TOLERANCE = 1e-9


class InputError(Error):
    pass


class ProtocolError(Error):
    pass


class TestMethod(enum.Enum):
    __test__ = False

    exact = "exact"
    monte_carlo = "monte_carlo"
    normal_approx = "normal_approx"


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class DisparityResult:
    u_statistic: float
    p_value: float
    significant: bool
    alpha: float
    n0: int
    n1: int
    method: TestMethod
    normal_p_value: Optional[float] = None


@lru_cache(maxsize=64)
def _labelings(n_total: int, n_first: int) -> np.ndarray:
    return np.array(list(combinations(range(n_total), n_first)), dtype=np.int64).reshape(-1, n_first)


def _two_sided(count_low: float, count_high: float, total: float) -> float:
    return min(1.0, 2.0 * min(count_low, count_high) / total)


def _exact_p(ranks: np.ndarray, n_first: int, u_observed: float) -> float:
    offset = n_first * (n_first + 1) / 2.0
    u_null = ranks[_labelings(len(ranks), n_first)].sum(axis=1) - offset
    low = np.count_nonzero(u_null <= u_observed + _U_TOLERANCE)
    high = np.count_nonzero(u_null >= u_observed - _U_TOLERANCE)
    return _two_sided(low, high, len(u_null))


def _monte_carlo_p(ranks: np.ndarray, n_first: int, u_observed: float, permutations: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    offset = n_first * (n_first + 1) / 2.0
    low = high = 0
    for start in range(0, permutations, _MONTE_CARLO_CHUNK):
        chunk = min(_MONTE_CARLO_CHUNK, permutations - start)
        shuffled = rng.permuted(np.broadcast_to(ranks, (chunk, len(ranks))), axis=1)
        u_null = shuffled[:, :n_first].sum(axis=1) - offset
        low += np.count_nonzero(u_null <= u_observed + _U_TOLERANCE)
        high += np.count_nonzero(u_null >= u_observed - _U_TOLERANCE)
    return _two_sided(low + 1, high + 1, permutations + 1)


def _normal_p(ranks: np.ndarray, n0: int, n1: int, u: float) -> float:
    tie_factor = tiecorrect(ranks)
    if tie_factor == 0:
        return 1.0
    sd = np.sqrt(tie_factor * n0 * n1 * (n0 + n1 + 1) / 12.0)
    z = max(abs(u - n0 * n1 / 2.0) - 0.5, 0.0) / sd
    return float(min(1.0, 2.0 * norm.sf(z)))


def mann_whitney_u(
    a: Sequence[float],
    b: Sequence[float],
    alpha: float = 0.05,
    seed: int = 0,
    permutations: int = MONTE_CARLO_PERMUTATIONS,
) -> DisparityResult:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if len(a) == 0 or len(b) == 0:
        raise InputError(f"Both samples must be non-empty, got sizes {len(a)} and {len(b)}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InputError("Samples must be finite")

    n0, n1 = len(a), len(b)
    ranks = rankdata(np.concatenate([a, b]))
    rank_sum_a, rank_sum_b = ranks[:n0].sum(), ranks[n0:].sum()
    u_a = rank_sum_a - n0 * (n0 + 1) / 2.0

    # orient on the smaller sample (then the smaller rank sum) so that p(a, b) == p(b, a) bit for bit
    if (n0, rank_sum_a) <= (n1, rank_sum_b):
        n_first, u_first = n0, u_a
    else:
        n_first, u_first = n1, n0 * n1 - u_a
    pooled = np.sort(ranks)

    normal_p = _normal_p(ranks, n0, n1, u_a)
    if comb(n0 + n1, n_first, exact=True) <= EXHAUSTIVE_LIMIT:
        method, p_value, normal_p = TestMethod.exact, _exact_p(pooled, n_first, u_first), None
    elif permutations > 0:
        method, p_value = TestMethod.monte_carlo, _monte_carlo_p(pooled, n_first, u_first, permutations, seed)
    else:
        method, p_value = TestMethod.normal_approx, normal_p

    return DisparityResult(
        u_statistic=float(u_a),
        p_value=float(p_value),
        significant=bool(p_value < alpha),
        alpha=alpha,
        n0=n0,
        n1=n1,
        method=method,
        normal_p_value=normal_p,
    )


def test_disparity(
    m0_means: Sequence[float],
    m1_means: Sequence[float],
    alpha: float = 0.05,
    trials: Optional[int] = None,
    seed: int = 0,
) -> DisparityResult:
    """Compares the per-trial group means of one metric; the raw per-instance values never enter the test."""
    for name, means in (("group 0", m0_means), ("group 1", m1_means)):
        if trials is not None and len(means) != trials:
            raise ProtocolError(f"Expected {trials} per-trial means for {name}, got {len(means)}")
    if len(m0_means) != len(m1_means):
        raise ProtocolError(f"Per-trial mean vectors differ in length: {len(m0_means)} vs {len(m1_means)}")
    return mann_whitney_u(m0_means, m1_means, alpha=alpha, seed=seed)


test_disparity.__test__ = False
