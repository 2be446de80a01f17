import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from dataio import EmptyDatasetError, SchemaError, load_dataset, load_dataset_with_report
from dataio.schema import DatasetSchema, FeatureKind
from shared.util import ConfigError

from .frames import CREDIT_SCHEMA, credit_frame


class LoadDatasetTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "credit.csv"

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, frame):
        frame.to_csv(self.path, index=False)

    def test_labels_follow_file_order(self):
        self.write(credit_frame(4))
        data = load_dataset(self.path, CREDIT_SCHEMA)
        np.testing.assert_array_equal(data.labels, [1, 0, 1, 0])
        np.testing.assert_array_equal(data.groups, [0, 1, 0, 1])

    def test_row_with_missing_value_is_dropped(self):
        frame = credit_frame(5)
        frame.loc[2, "housing"] = None
        self.write(frame)
        data, report = load_dataset_with_report(self.path, CREDIT_SCHEMA)
        self.assertEqual(len(data), 4)
        self.assertEqual(report.dropped_missing, 1)
        np.testing.assert_array_equal(data.row_ids, [0, 1, 3, 4])

    def test_third_sensitive_value_is_dropped_with_count(self):
        frame = credit_frame(6)
        frame.loc[[1, 4], "sex"] = "unknown"
        self.write(frame)
        data, report = load_dataset_with_report(self.path, CREDIT_SCHEMA)
        self.assertEqual(len(data), 4)
        self.assertEqual(report.dropped_out_of_scope_group, 2)
        self.assertIn("2 row(s)", report.warning)

    def test_missing_column(self):
        self.write(credit_frame(4).drop(columns=["housing"]))
        with self.assertRaises(SchemaError):
            load_dataset(self.path, CREDIT_SCHEMA)

    def test_no_rows_left(self):
        frame = credit_frame(4)
        frame["sex"] = "unknown"
        self.write(frame)
        with self.assertRaises(EmptyDatasetError):
            load_dataset(self.path, CREDIT_SCHEMA)

    def test_missing_file(self):
        with self.assertRaises(SchemaError):
            load_dataset(Path(self.tmp.name) / "absent.csv", CREDIT_SCHEMA)

    def test_non_numeric_continuous_column(self):
        frame = credit_frame(4)
        frame.loc[0, "age"] = "old"
        self.write(frame)
        with self.assertRaises(SchemaError):
            load_dataset(self.path, CREDIT_SCHEMA)

    def test_category_inventory(self):
        self.write(credit_frame(4))
        data = load_dataset(self.path, CREDIT_SCHEMA)
        self.assertEqual(data.categories, {"housing": ("free", "own", "rent")})


class DatasetSchemaTest(unittest.TestCase):
    def test_load_uses_file_keys(self):
        schema = DatasetSchema.load(
            {
                "target": "risk",
                "positive_label": "good",
                "sensitive": "sex",
                "group0": "male",
                "group1": "female",
                "features": [{"name": "age", "kind": "continuous"}, {"name": "housing", "kind": "categorical"}],
            },
        )
        self.assertEqual(schema, CREDIT_SCHEMA)
        self.assertEqual(schema.continuous_columns, ["age"])
        self.assertEqual(schema.feature_columns[1].kind, FeatureKind.categorical)

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "schema.json"
            path.write_text(json.dumps(CREDIT_SCHEMA.to_dict(encode_json=True)), "utf-8")
            self.assertEqual(DatasetSchema.load(path), CREDIT_SCHEMA)

    def test_sensitive_column_as_feature(self):
        data = CREDIT_SCHEMA.to_dict(encode_json=True)
        data["features"].append({"name": "sex", "kind": "categorical"})
        with self.assertRaises(ConfigError):
            DatasetSchema.load(data)

    def test_target_column_as_feature(self):
        data = CREDIT_SCHEMA.to_dict(encode_json=True)
        data["features"].append({"name": "risk", "kind": "categorical"})
        with self.assertRaises(ConfigError):
            DatasetSchema.load(data)

    def test_identical_groups(self):
        data = CREDIT_SCHEMA.to_dict(encode_json=True)
        data["group1"] = "male"
        with self.assertRaises(ConfigError):
            DatasetSchema.load(data)

    def test_include_sensitive(self):
        data = CREDIT_SCHEMA.to_dict(encode_json=True)
        data["include_sensitive"] = True
        schema = DatasetSchema.load(data)
        self.assertEqual(schema.categorical_columns, ["housing", "sex"])
