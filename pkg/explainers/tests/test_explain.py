import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd

from explainers import (
    ExplainerConfig,
    ExplainerMethod,
    Explanation,
    ExplanationError,
    bind,
    explain,
    explain_vanilla_grad,
    write_explanations,
)
from models import initialize_mlp


class ExplainTest(unittest.TestCase):
    def setUp(self):
        self.model = initialize_mlp(3, seed=0, hidden_layers=[8])
        self.x = np.array([0.5, -0.5, 1.0])
        self.cfg = ExplainerConfig().with_background(np.zeros(3))

    def test_every_method(self):
        for method in ExplainerMethod:
            explanation = explain(method, self.model, self.x, self.cfg, seed=5, instance_index=2)
            self.assertEqual(explanation.method, method)
            self.assertEqual(explanation.instance_index, 2)
            self.assertEqual(explanation.importances.shape, (3,))

    def test_seed_dependence(self):
        for method in ExplainerMethod:
            first = explain(method, self.model, self.x, self.cfg, seed=1).importances
            second = explain(method, self.model, self.x, self.cfg, seed=2).importances
            if method.deterministic:
                np.testing.assert_array_equal(first, second)
            elif method in (ExplainerMethod.lime, ExplainerMethod.smoothgrad):
                self.assertFalse(np.array_equal(first, second), method)

    def test_bind(self):
        explain_fn = bind(ExplainerMethod.lime, self.model, self.cfg)
        np.testing.assert_array_equal(
            explain_fn(self.x, 9),
            explain(ExplainerMethod.lime, self.model, self.x, self.cfg, seed=9).importances,
        )

    def test_non_finite_explanation(self):
        with self.assertRaises(ExplanationError):
            Explanation(np.array([np.nan, 1.0]), 0, ExplainerMethod.lime, 0)

    def test_method_ids_are_stable(self):
        self.assertEqual([method.method_id for method in ExplainerMethod], [1, 2, 3, 4, 5])
        self.assertEqual(ExplainerMethod.kernelshap.display_name, "SHAP")


class WriteExplanationsTest(unittest.TestCase):
    def test_columns(self):
        model = initialize_mlp(2, seed=0, hidden_layers=[4])
        rows = [(explain_vanilla_grad(model, np.array([1.0, 2.0]), instance_index=i), 0) for i in range(3)]
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "out" / "explanations.csv"
            write_explanations(path, rows, ["a", "b"])
            frame = pd.read_csv(path)
        self.assertEqual(list(frame.columns), ["instance_index", "method", "replicate", "seed", "a", "b"])
        self.assertEqual(frame["instance_index"].tolist(), [0, 1, 2])
        self.assertEqual(frame["method"].unique().tolist(), ["vanillagrad"])
