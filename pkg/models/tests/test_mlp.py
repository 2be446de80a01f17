import unittest

import numpy as np

from models import (
    MLP_HIDDEN_LAYERS,
    DivergenceError,
    LinearModel,
    MlpModel,
    ModelKind,
    TrainConfig,
    accuracy,
    initialize_mlp,
    train_model,
)
from shared.util import ConfigError

from .gradcheck import central_difference, relative_error


class MlpModelTest(unittest.TestCase):
    def test_architecture(self):
        model = initialize_mlp(7, seed=0)
        self.assertEqual(model.widths, (7, *MLP_HIDDEN_LAYERS, 1))
        self.assertEqual(model.d, 7)

    def test_initialization_is_seeded(self):
        first, second = initialize_mlp(4, seed=3), initialize_mlp(4, seed=3)
        for a, b in zip(first.layer_weights, second.layer_weights):
            np.testing.assert_array_equal(a, b)

    def test_input_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        model = initialize_mlp(8, seed=1)
        for x in rng.normal(size=(100, 8)):
            expected = central_difference(model.predict_proba, x)
            self.assertLess(relative_error(model.input_gradient(x), expected), 1e-4)

    def test_batch_matches_single(self):
        model = initialize_mlp(3, seed=2)
        X = np.random.default_rng(4).normal(size=(5, 3))
        np.testing.assert_allclose(model.predict_proba(X), [model.predict_proba(x) for x in X], rtol=1e-12)
        np.testing.assert_allclose(model.input_gradient(X), [model.input_gradient(x) for x in X], rtol=1e-12)


class TrainMlpTest(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(5)
        self.X = rng.normal(size=(300, 2))
        self.y = (self.X[:, 0] * self.X[:, 1] > 0).astype(int)
        self.cfg = TrainConfig(epochs=200, hidden_layers=[32, 32], seed=9)

    def test_learns_interaction(self):
        model = train_model(ModelKind.NN, self.X, self.y, self.cfg)
        self.assertGreater(accuracy(model, self.X, self.y), 0.8)

    def test_deterministic(self):
        first = train_model(ModelKind.NN, self.X, self.y, self.cfg)
        second = train_model(ModelKind.NN, self.X, self.y, self.cfg)
        np.testing.assert_array_equal(first.predict_proba(self.X), second.predict_proba(self.X))

    def test_divergence_names_epoch(self):
        X = self.X.copy()
        X[0, 0] = np.inf
        with self.assertRaisesRegex(DivergenceError, "epoch 1"):
            train_model(ModelKind.NN, X, self.y, TrainConfig(epochs=2, batch_size=len(self.y), hidden_layers=[4]))

    def test_invalid_config(self):
        with self.assertRaises(ConfigError):
            train_model(ModelKind.NN, self.X, self.y, TrainConfig(epochs=0))


def xor_clusters(n: int = 1000, noise: float = 0.1, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Four Gaussian clusters at (+-1, +-1); the label is 1 where the coordinate signs differ."""
    rng = np.random.default_rng(seed)
    centres = np.array([[-1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [1.0, -1.0]])
    labels = np.array([0, 0, 1, 1])
    cluster = np.arange(n) % 4
    return centres[cluster] + rng.normal(0.0, noise, size=(n, 2)), labels[cluster]


class XorTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.X, cls.y = xor_clusters()
        cls.cfg = TrainConfig(seed=0)

    def test_default_network_fits_xor(self):
        model = train_model(ModelKind.NN, self.X, self.y, self.cfg)
        self.assertEqual(model.widths, (2, 50, 100, 200, 1))
        self.assertGreaterEqual(accuracy(model, self.X, self.y), 0.95)

    def test_logistic_regression_cannot(self):
        model = train_model(ModelKind.LR, self.X, self.y, self.cfg)
        self.assertLessEqual(accuracy(model, self.X, self.y), 0.75)


class ZeroNetworkTest(unittest.TestCase):
    def setUp(self):
        template = initialize_mlp(5, seed=0)
        self.model = MlpModel(
            layer_weights=tuple(np.zeros_like(w) for w in template.layer_weights),
            layer_biases=tuple(np.zeros_like(b) for b in template.layer_biases),
        )
        self.X = np.random.default_rng(3).normal(0.0, 10.0, size=(20, 5))

    def test_probability_is_one_half(self):
        np.testing.assert_array_equal(self.model.predict_proba(self.X), np.full(20, 0.5))

    def test_gradient_is_zero(self):
        np.testing.assert_array_equal(self.model.input_gradient(self.X), np.zeros((20, 5)))


class ProbabilityBoundsTest(unittest.TestCase):
    def test_outputs_stay_inside_unit_interval(self):
        rng = np.random.default_rng(8)
        X = rng.normal(0.0, 100.0, size=(10_000, 6))
        for model in (
            initialize_mlp(6, seed=1),
            LinearModel(coefficients=rng.normal(0.0, 50.0, 6), intercept=3.0),
        ):
            with self.subTest(model=model.kind):
                p = model.predict_proba(X)
                self.assertEqual(p.shape, (10_000,))
                self.assertTrue(np.all(p > 0.0))
                self.assertTrue(np.all(p < 1.0))
