import unittest

import numpy as np

from explainers import ExplainerConfig, ExplainerMethod, bind
from metrics import MetricConfig, inconsistency, instability, replicate_seeds
from models import LinearModel, initialize_mlp
from shared.seeding import mix64
from shared.util import ConfigError


class InstabilityTest(unittest.TestCase):
    def test_constant_explainer(self):
        self.assertEqual(instability(lambda x, seed: np.ones(3), np.zeros(3), MetricConfig(k=1), seed=0), 0.0)

    def test_zero_noise_deterministic_explainer(self):
        model = initialize_mlp(3, seed=0, hidden_layers=[8])
        explain_fn = bind(ExplainerMethod.vanillagrad, model, ExplainerConfig())
        self.assertEqual(instability(explain_fn, np.ones(3), MetricConfig(k=1, sigma=0.0), seed=0), 0.0)

    def test_matches_monte_carlo_estimate(self):
        model = LinearModel(coefficients=np.array([2.0, -1.0]), intercept=0.0)
        explain_fn = bind(ExplainerMethod.vanillagrad, model, ExplainerConfig())
        x = np.zeros(2)
        m = 10_000
        value = instability(explain_fn, x, MetricConfig(k=1, sigma=0.1, m_stability=m), seed=0)

        rng = np.random.default_rng(12345)
        neighbours = rng.normal(0.0, 0.1, size=(m, 2))
        h0 = model.predict_proba(x)
        h = model.predict_proba(neighbours)
        distances = np.abs((h0 * (1 - h0) - h * (1 - h))[:, None] * model.coefficients[None, :]).sum(axis=1)
        standard_error = np.sqrt(2) * distances.std() / np.sqrt(m)
        self.assertLess(abs(value - distances.mean()), 3 * standard_error)

    def test_neighbour_seed_count(self):
        with self.assertRaises(ConfigError):
            instability(lambda x, seed: x, np.zeros(2), MetricConfig(k=1, m_stability=3), seed=0, neighbour_seeds=[1])


class InconsistencyTest(unittest.TestCase):
    def setUp(self):
        self.model = initialize_mlp(4, seed=2, hidden_layers=[8])
        self.x = np.array([0.1, -0.2, 0.3, 0.4])
        self.cfg = ExplainerConfig().with_background(np.zeros(4))

    def test_deterministic_explainers(self):
        for method in (ExplainerMethod.vanillagrad, ExplainerMethod.intgrad):
            explain_fn = bind(method, self.model, self.cfg)
            self.assertEqual(inconsistency(explain_fn, self.x, replicate_seeds(7, 5)), 0.0)

    def test_repeated_seed(self):
        explain_fn = bind(ExplainerMethod.lime, self.model, self.cfg)
        self.assertEqual(inconsistency(explain_fn, self.x, [3, 3]), 0.0)

    def test_lime_varies_with_seed(self):
        explain_fn = bind(ExplainerMethod.lime, self.model, self.cfg)
        self.assertGreater(inconsistency(explain_fn, self.x, [3, 4]), 0.0)

    def test_needs_two_seeds(self):
        with self.assertRaises(ConfigError):
            inconsistency(lambda x, seed: x, self.x, [1])

    def test_replicate_seeds(self):
        seeds = replicate_seeds(10, 3)
        self.assertEqual(seeds[0], 10)
        self.assertEqual(seeds[1:], [mix64(10, 1), mix64(10, 2), mix64(10, 3)])
        self.assertEqual(replicate_seeds(10, 5)[:4], seeds)
