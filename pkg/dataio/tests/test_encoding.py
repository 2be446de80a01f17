import unittest

import numpy as np
import pandas as pd

from dataio import ColumnKind, FeatureEncoder, dataset_from_frame, encode_features
from shared.util import ConfigError

from .frames import CREDIT_SCHEMA


def dataset(ages, housing):
    frame = pd.DataFrame(
        {
            "age": [str(a) for a in ages],
            "housing": housing,
            "sex": ["male", "female"] * (len(ages) // 2) + ["male"] * (len(ages) % 2),
            "risk": ["good"] * len(ages),
        },
    )
    return dataset_from_frame(frame, CREDIT_SCHEMA)[0]


class EncodeFeaturesTest(unittest.TestCase):
    def setUp(self):
        self.train = dataset([1, 2, 3], ["A", "B", "C"])

    def test_one_hot_levels(self):
        X_train, _ = encode_features(self.train, self.train)
        self.assertEqual(X_train.feature_names, ("age", "housing=A", "housing=B", "housing=C"))
        self.assertEqual(X_train.d, 1 + 3)
        np.testing.assert_array_equal(X_train.X[1, 1:], [0, 1, 0])
        np.testing.assert_array_equal(X_train.onehot_mask, [False, True, True, True])
        self.assertEqual(X_train.column_kinds[0], ColumnKind.numeric)

    def test_standardization_uses_train_statistics(self):
        X_train, X_test = encode_features(self.train, dataset([4, 2], ["A", "A"]))
        np.testing.assert_allclose(X_train.X[:, 0], [-1.2247, 0.0, 1.2247], atol=1e-4)
        np.testing.assert_allclose(X_test.X[:, 0], [2.4495, 0.0], atol=1e-4)

    def test_standardized_train_moments(self):
        rng = np.random.default_rng(5)
        train = dataset(rng.normal(40, 12, 50).round(3), ["A"] * 50)
        X_train, _ = encode_features(train, train)
        self.assertAlmostEqual(X_train.X[:, 0].mean(), 0.0, delta=1e-9)
        self.assertAlmostEqual(X_train.X[:, 0].std(), 1.0, delta=1e-9)

    def test_unseen_level_encodes_to_zeros(self):
        _, X_test = encode_features(self.train, dataset([2], ["D"]))
        np.testing.assert_array_equal(X_test.X[0, 1:], [0, 0, 0])

    def test_zero_variance_column(self):
        X_train, _ = encode_features(dataset([5, 5, 5], ["A", "B", "C"]), self.train)
        np.testing.assert_array_equal(X_train.X[:, 0], [0, 0, 0])

    def test_idempotent(self):
        encoder = FeatureEncoder.fit(self.train)
        test = dataset([7, 1], ["B", "C"])
        np.testing.assert_array_equal(encoder.transform(test).X, encoder.transform(test).X)

    def test_read_only(self):
        X_train, _ = encode_features(self.train, self.train)
        with self.assertRaises(ValueError):
            X_train.X[0, 0] = 1.0

    def test_schema_mismatch(self):
        other = dataset_from_frame(
            pd.DataFrame({"age": ["1"], "housing": ["A"], "sex": ["male"], "risk": ["good"]}),
            CREDIT_SCHEMA.__class__.from_dict({**CREDIT_SCHEMA.to_dict(encode_json=True), "positive_label": "bad"}),
        )[0]
        with self.assertRaises(ConfigError):
            encode_features(self.train, other)

    def test_statistics_are_population_moments(self):
        X_train, _ = encode_features(self.train, self.train)
        self.assertAlmostEqual(X_train.means[0], 2.0)
        self.assertAlmostEqual(X_train.stds[0], np.std([1.0, 2.0, 3.0], ddof=0))
        np.testing.assert_array_equal(X_train.means[1:], [0, 0, 0])
        np.testing.assert_array_equal(X_train.stds[1:], [1, 1, 1])

    def test_zero_variance_scale_is_one(self):
        X_train, X_test = encode_features(dataset([5, 5, 5], ["A", "B", "C"]), dataset([7, 3], ["A", "B"]))
        self.assertEqual(X_train.stds[0], 1.0)
        np.testing.assert_allclose(X_test.X[:, 0], [2.0, -2.0])

    def test_unseen_levels_only_zero_their_block(self):
        _, X_test = encode_features(self.train, dataset([3, 1], ["D", "B"]))
        np.testing.assert_array_equal(X_test.X[:, 1:], [[0, 0, 0], [0, 1, 0]])
        self.assertAlmostEqual(X_test.X[0, 0], 1.2247, places=4)
