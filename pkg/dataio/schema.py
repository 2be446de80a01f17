import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from dataclasses_json import Undefined, config, dataclass_json

from shared.util import ConfigError, require


# schema files shipped with the package, addressable by name wherever a schema path is accepted
BUILTIN_SCHEMA_DIR = Path(__file__).parent / "schemas"
BUILTIN_SCHEMAS = ("compas", "german_credit", "student_performance")


class FeatureKind(enum.Enum):
    continuous = "continuous"
    categorical = "categorical"


class ColumnKind(enum.Enum):
    numeric = "numeric"
    onehot = "onehot"


class NaPolicy(enum.Enum):
    drop_row = "drop_row"


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class FeatureColumn:
    name: str
    kind: FeatureKind


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class DatasetSchema:
    target_column: str = field(metadata=config(field_name="target"))
    sensitive_column: str = field(metadata=config(field_name="sensitive"))
    group0_value: Any = field(metadata=config(field_name="group0"))
    group1_value: Any = field(metadata=config(field_name="group1"))
    feature_columns: list[FeatureColumn] = field(metadata=config(field_name="features"))
    positive_label: Any = None
    # numeric targets: a row is positive when target >= positive_threshold
    positive_threshold: Optional[float] = None
    delimiter: str = ","
    na_policy: NaPolicy = NaPolicy.drop_row
    include_sensitive: bool = False

    def validate(self) -> "DatasetSchema":
        names = [column.name for column in self.feature_columns]
        require(len(names) > 0, "Schema declares no feature columns")
        require(
            (self.positive_label is None) != (self.positive_threshold is None),
            "Schema needs exactly one of positive_label and positive_threshold",
        )
        require(len(set(names)) == len(names), "Schema declares duplicate feature columns")
        require(self.target_column not in names, f"Target column {self.target_column!r} is listed as a feature")
        require(
            self.sensitive_column not in names,
            f"Sensitive column {self.sensitive_column!r} is listed as a feature, use include_sensitive instead",
        )
        require(str(self.group0_value) != str(self.group1_value), "group0 and group1 must differ")
        return self

    @property
    def used_columns(self) -> list[str]:
        return [column.name for column in self.feature_columns] + [self.target_column, self.sensitive_column]

    @property
    def continuous_columns(self) -> list[str]:
        return [column.name for column in self.feature_columns if column.kind == FeatureKind.continuous]

    @property
    def categorical_columns(self) -> list[str]:
        columns = [column.name for column in self.feature_columns if column.kind == FeatureKind.categorical]
        return columns + [self.sensitive_column] if self.include_sensitive else columns

    @property
    def encoded_columns(self) -> list[FeatureColumn]:
        if not self.include_sensitive:
            return list(self.feature_columns)
        return list(self.feature_columns) + [FeatureColumn(self.sensitive_column, FeatureKind.categorical)]

    @classmethod
    def load(cls, source: Union[str, Path, dict]) -> "DatasetSchema":
        if isinstance(source, str) and source in BUILTIN_SCHEMAS:
            source = BUILTIN_SCHEMA_DIR / f"{source}.json"
        if not isinstance(source, dict):
            try:
                with open(source, "r", encoding="utf-8") as f:
                    source = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"Cannot read schema {source}: {e}")
        try:
            return cls.from_dict(source).validate()
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigError(f"Invalid schema: {e}")


@dataclass(frozen=True)
class Dataset:
    """
    Raw labelled rows. ``rows`` keeps the original row ids as its index, ``labels`` and ``groups`` are
    aligned 0/1 arrays and ``categories`` is the level inventory inferred at load time.
    """

    rows: pd.DataFrame
    labels: np.ndarray
    groups: np.ndarray
    schema: DatasetSchema
    categories: dict[str, tuple[str, ...]]

    def __post_init__(self):
        require(len(self.rows) == len(self.labels) == len(self.groups), "Dataset columns are misaligned")

    def __len__(self):
        return len(self.rows)

    @property
    def row_ids(self) -> np.ndarray:
        return self.rows.index.to_numpy()

    def take(self, positions: np.ndarray) -> "Dataset":
        positions = np.asarray(positions, dtype=np.int64)
        return Dataset(
            rows=self.rows.iloc[positions],
            labels=self.labels[positions],
            groups=self.groups[positions],
            schema=self.schema,
            categories=self.categories,
        )


@dataclass(frozen=True)
class FeatureMatrix:
    X: np.ndarray
    feature_names: tuple[str, ...]
    means: np.ndarray
    stds: np.ndarray
    column_kinds: tuple[ColumnKind, ...]

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def onehot_mask(self) -> np.ndarray:
        return np.array([kind == ColumnKind.onehot for kind in self.column_kinds], dtype=bool)


@dataclass(frozen=True)
class GroupSplit:
    d0: tuple[int, ...]
    d1: tuple[int, ...]


@dataclass(frozen=True)
class LoadReport:
    rows_read: int
    dropped_missing: int
    dropped_out_of_scope_group: int
    warning: Optional[str] = None
