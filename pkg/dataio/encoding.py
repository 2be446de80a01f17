from dataclasses import dataclass
from typing import Union

import numpy as np
import pandas as pd
from sklearn.preprocessing import OneHotEncoder, StandardScaler

from shared.util import ConfigError

from .schema import ColumnKind, Dataset, FeatureKind, FeatureMatrix


@dataclass(frozen=True)
class _Block:
    column: str
    kind: FeatureKind
    transformer: Union[StandardScaler, OneHotEncoder]

    @property
    def levels(self) -> tuple[str, ...]:
        return tuple(self.transformer.categories_[0]) if self.kind == FeatureKind.categorical else ()

    def frame(self, values: pd.Series) -> pd.DataFrame:
        if self.kind == FeatureKind.continuous:
            return values.astype(np.float64).to_frame()
        return values.astype(str).to_frame()


def _fit_block(column: str, kind: FeatureKind, values: pd.Series) -> _Block:
    if kind == FeatureKind.continuous:
        # ddof=0, and a zero-variance column keeps scale 1 so it is only centred
        transformer = StandardScaler()
        block = _Block(column, kind, transformer)
    else:
        levels = sorted(values.astype(str).unique())
        transformer = OneHotEncoder(categories=[levels], handle_unknown="ignore", sparse_output=False, dtype=np.float64)
        block = _Block(column, kind, transformer)
    transformer.fit(block.frame(values))
    return block


class FeatureEncoder:
    """
    One-hot encodes categoricals with the levels seen in the training rows and standardizes continuous
    columns with training statistics. Test levels never seen in training map to an all-zeros block.
    """

    def __init__(self, blocks: tuple[_Block, ...]):
        self._blocks = blocks
        names, kinds, means, stds = [], [], [], []
        for block in blocks:
            if block.kind == FeatureKind.continuous:
                names.append(block.column)
                kinds.append(ColumnKind.numeric)
                means.append(float(block.transformer.mean_[0]))
                stds.append(float(block.transformer.scale_[0]))
            else:
                names += [f"{block.column}={level}" for level in block.levels]
                kinds += [ColumnKind.onehot] * len(block.levels)
                means += [0.0] * len(block.levels)
                stds += [1.0] * len(block.levels)
        self.feature_names = tuple(names)
        self.column_kinds = tuple(kinds)
        self.means = np.array(means, dtype=np.float64)
        self.stds = np.array(stds, dtype=np.float64)

    @classmethod
    def fit(cls, train: Dataset) -> "FeatureEncoder":
        return cls(
            tuple(
                _fit_block(column.name, column.kind, train.rows[column.name])
                for column in train.schema.encoded_columns
            ),
        )

    @property
    def d(self) -> int:
        return len(self.feature_names)

    def transform(self, data: Dataset) -> FeatureMatrix:
        columns = []
        for block in self._blocks:
            if block.column not in data.rows.columns:
                raise ConfigError(f"Column {block.column!r} is missing from the dataset being encoded")
            columns.append(np.asarray(block.transformer.transform(block.frame(data.rows[block.column])), np.float64))
        X = np.ascontiguousarray(np.hstack(columns)) if columns else np.zeros((len(data), 0))
        X.setflags(write=False)
        return FeatureMatrix(
            X=X,
            feature_names=self.feature_names,
            means=self.means,
            stds=self.stds,
            column_kinds=self.column_kinds,
        )


def encode_features(train: Dataset, test: Dataset) -> tuple[FeatureMatrix, FeatureMatrix]:
    if train.schema != test.schema:
        raise ConfigError("Train and test datasets must share one schema")
    encoder = FeatureEncoder.fit(train)
    return encoder.transform(train), encoder.transform(test)
