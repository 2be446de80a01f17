import itertools
import math
import unittest

import numpy as np

from explainers import ExplainerConfig, KernelShapConfig, all_coalitions, kernel_shap, shapley_kernel
from models import LinearModel, ShapeError, initialize_mlp
from shared.util import ConfigError


def brute_force_shapley(model, x: np.ndarray, background: np.ndarray) -> np.ndarray:
    d = len(x)

    def value(coalition) -> float:
        mask = np.zeros(d, dtype=bool)
        mask[list(coalition)] = True
        return float(model.predict_proba(np.where(mask, x, background)))

    phi = np.zeros(d)
    for j in range(d):
        others = [i for i in range(d) if i != j]
        for size in range(d):
            weight = math.factorial(size) * math.factorial(d - size - 1) / math.factorial(d)
            for coalition in itertools.combinations(others, size):
                phi[j] += weight * (value(coalition + (j,)) - value(coalition))
    return phi


def config(background, samples: int = 1000) -> ExplainerConfig:
    return ExplainerConfig(kernelshap=KernelShapConfig(samples=samples, background=list(background)))


class KernelShapTest(unittest.TestCase):
    def test_matches_brute_force_shapley_values(self):
        rng = np.random.default_rng(0)
        for d in range(2, 11):
            model = LinearModel(coefficients=rng.normal(size=d), intercept=float(rng.normal()))
            x, background = rng.normal(size=d), rng.normal(size=d) * 0.1
            phi = kernel_shap(model, x, config(background, samples=2**d), seed=0)
            np.testing.assert_allclose(phi, brute_force_shapley(model, x, background), atol=1e-6)

    def test_matches_brute_force_on_mlp(self):
        rng = np.random.default_rng(1)
        model = initialize_mlp(5, seed=3, hidden_layers=[8, 8])
        x, background = rng.normal(size=5), np.zeros(5)
        np.testing.assert_allclose(
            kernel_shap(model, x, config(background), seed=0),
            brute_force_shapley(model, x, background),
            atol=1e-6,
        )

    def test_efficiency_when_sampling(self):
        rng = np.random.default_rng(2)
        model = initialize_mlp(12, seed=4, hidden_layers=[16])
        background = np.zeros(12)
        cfg = config(background, samples=200)
        for x in rng.normal(size=(10, 12)):
            phi = kernel_shap(model, x, cfg, seed=5)
            gap = model.predict_proba(x) - model.predict_proba(background)
            self.assertAlmostEqual(phi.sum(), gap, delta=1e-9)

    def test_sampling_is_seeded(self):
        model = initialize_mlp(12, seed=4, hidden_layers=[16])
        x = np.linspace(-1, 1, 12)
        cfg = config(np.zeros(12), samples=200)
        np.testing.assert_array_equal(kernel_shap(model, x, cfg, seed=1), kernel_shap(model, x, cfg, seed=1))

    def test_single_feature(self):
        model = LinearModel(coefficients=np.array([2.0]), intercept=0.0)
        phi = kernel_shap(model, np.array([1.0]), config([0.0]), seed=0)
        np.testing.assert_allclose(phi, [model.predict_proba(np.array([1.0])) - 0.5])

    def test_background_required(self):
        model = LinearModel(coefficients=np.ones(2), intercept=0.0)
        with self.assertRaises(ConfigError):
            kernel_shap(model, np.ones(2), ExplainerConfig(), seed=0)
        with self.assertRaises(ShapeError):
            kernel_shap(model, np.ones(2), config([0.0]), seed=0)

    def test_coalitions(self):
        coalitions = all_coalitions(3)
        self.assertEqual(coalitions.shape, (6, 3))
        self.assertEqual(len({tuple(row) for row in coalitions}), 6)
        self.assertTrue(np.all((coalitions.sum(axis=1) > 0) & (coalitions.sum(axis=1) < 3)))
        np.testing.assert_allclose(shapley_kernel(4, np.array([1, 2, 3])), [0.25, 0.125, 0.25])

    def test_sampled_estimate_is_within_three_standard_errors(self):
        rng = np.random.default_rng(7)
        model = initialize_mlp(8, seed=6, hidden_layers=[16])
        x, background = rng.normal(size=8), np.zeros(8)
        exact = brute_force_shapley(model, x, background)
        cfg = config(background, samples=200)
        runs = np.array([kernel_shap(model, x, cfg, seed=seed) for seed in range(40)])
        spread = runs.std(axis=0, ddof=1)
        inside = np.abs(runs - exact) <= 3 * spread + 1e-12
        self.assertGreaterEqual(inside.mean(), 0.95)
        self.assertTrue(np.all(spread > 0))
