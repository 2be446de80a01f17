from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from shared.output import print_warning

from .errors import EmptyDatasetError, SchemaError
from .schema import Dataset, DatasetSchema, LoadReport, NaPolicy


def _matches(values: pd.Series, expected) -> np.ndarray:
    return (values.astype(str).str.strip() == str(expected).strip()).to_numpy()


def _labels(target: pd.Series, schema: DatasetSchema, source: str) -> np.ndarray:
    if schema.positive_threshold is None:
        return _matches(target, schema.positive_label).astype(np.int64)
    try:
        values = pd.to_numeric(target).to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as e:
        raise SchemaError(f"{source}: target column {schema.target_column!r} is not numeric ({e})")
    return (values >= schema.positive_threshold).astype(np.int64)


def _category_inventory(rows: pd.DataFrame, schema: DatasetSchema) -> dict[str, tuple[str, ...]]:
    return {column: tuple(sorted(rows[column].astype(str).unique())) for column in schema.categorical_columns}


def dataset_from_frame(
    frame: pd.DataFrame,
    schema: DatasetSchema,
    source: str = "<frame>",
) -> tuple[Dataset, LoadReport]:
    missing_columns = [column for column in schema.used_columns if column not in frame.columns]
    if missing_columns:
        raise SchemaError(f"{source}: missing column(s) {', '.join(missing_columns)}")

    rows_read = len(frame)
    frame = frame[schema.used_columns]
    if schema.na_policy == NaPolicy.drop_row:
        complete = frame.notna().all(axis=1) & ~(frame.astype(str).apply(lambda c: c.str.strip()) == "").any(axis=1)
        dropped_missing = int((~complete).sum())
        frame = frame[complete]
    else:  # pragma: no cover
        raise SchemaError(f"Unsupported na_policy {schema.na_policy}")

    in_group0 = _matches(frame[schema.sensitive_column], schema.group0_value)
    in_group1 = _matches(frame[schema.sensitive_column], schema.group1_value)
    in_scope = in_group0 | in_group1
    dropped_group = int((~in_scope).sum())
    warning = None
    if dropped_group:
        warning = (
            f"{source}: dropped {dropped_group} row(s) whose {schema.sensitive_column!r} value is neither "
            f"{schema.group0_value!r} nor {schema.group1_value!r}"
        )
        print_warning(warning)
    frame = frame[in_scope]
    groups = in_group1[in_scope].astype(np.int64)

    if len(frame) == 0:
        raise EmptyDatasetError(f"{source}: no rows left after filtering")

    rows = frame[[column.name for column in schema.feature_columns] + [schema.sensitive_column]].copy()
    for column in schema.continuous_columns:
        try:
            rows[column] = pd.to_numeric(rows[column]).astype(np.float64)
        except (ValueError, TypeError) as e:
            raise SchemaError(f"{source}: continuous column {column!r} is not numeric ({e})")
    for column in schema.categorical_columns:
        rows[column] = rows[column].astype(str).str.strip()

    labels = _labels(frame[schema.target_column], schema, source)
    dataset = Dataset(
        rows=rows,
        labels=labels,
        groups=groups,
        schema=schema,
        categories=_category_inventory(rows, schema),
    )
    return dataset, LoadReport(
        rows_read=rows_read,
        dropped_missing=dropped_missing,
        dropped_out_of_scope_group=dropped_group,
        warning=warning,
    )


def load_dataset_with_report(path: Union[str, Path], schema: DatasetSchema) -> tuple[Dataset, LoadReport]:
    try:
        frame = pd.read_csv(
            path,
            sep=schema.delimiter,
            dtype=str,
            keep_default_na=True,
            encoding="utf-8",
            skipinitialspace=True,
        )
    except FileNotFoundError:
        raise SchemaError(f"Dataset file {path} does not exist")
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(f"{path}: file is empty")
    return dataset_from_frame(frame, schema, source=str(path))


def load_dataset(path: Union[str, Path], schema: DatasetSchema) -> Dataset:
    return load_dataset_with_report(path, schema)[0]
