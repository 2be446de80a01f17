from .encoding import FeatureEncoder, encode_features
from .errors import EmptyDatasetError, GroupCoverageError, SchemaError, SplitError, SyntheticSpecError
from .loading import dataset_from_frame, load_dataset, load_dataset_with_report
from .schema import (
    BUILTIN_SCHEMAS,
    ColumnKind,
    Dataset,
    DatasetSchema,
    FeatureColumn,
    FeatureKind,
    FeatureMatrix,
    GroupSplit,
    LoadReport,
    NaPolicy,
)
from .split import partition_by_group, stratified_split
from .synthetic import LabelRule, SyntheticSpec, generate_synthetic

__all__ = (
    "BUILTIN_SCHEMAS",
    "ColumnKind",
    "Dataset",
    "DatasetSchema",
    "EmptyDatasetError",
    "FeatureColumn",
    "FeatureEncoder",
    "FeatureKind",
    "FeatureMatrix",
    "GroupCoverageError",
    "GroupSplit",
    "LabelRule",
    "LoadReport",
    "NaPolicy",
    "SchemaError",
    "SplitError",
    "SyntheticSpec",
    "SyntheticSpecError",
    "dataset_from_frame",
    "encode_features",
    "generate_synthetic",
    "load_dataset",
    "load_dataset_with_report",
    "partition_by_group",
    "stratified_split",
)
