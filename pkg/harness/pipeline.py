from dataclasses import dataclass
from typing import Union

import numpy as np

from dataio import (
    Dataset,
    FeatureEncoder,
    FeatureMatrix,
    GroupSplit,
    generate_synthetic,
    load_dataset,
    partition_by_group,
    stratified_split,
)
from models import LinearModel, MlpModel, ModelKind, accuracy, train_model
from shared.seeding import mix64

from .config import DatasetSource, ExperimentConfig

# stream tags for mix64, never change them
SPLIT_STREAM = 1
MODEL_STREAM = 2
CAP_STREAM = 3

_MODEL_IDS = {ModelKind.LR: 1, ModelKind.NN: 2}


@dataclass(frozen=True)
class TrialData:
    trial_seed: int
    train: Dataset
    test: Dataset
    X_train: FeatureMatrix
    X_test: FeatureMatrix
    groups: GroupSplit


def load_source(source: DatasetSource) -> Dataset:
    source.validate()
    if source.synthetic is not None:
        return generate_synthetic(source.synthetic, source.synthetic_seed)
    return load_dataset(source.path, source.resolved_schema())


def prepare_trial(cfg: ExperimentConfig, dataset: Dataset, trial_seed: int) -> TrialData:
    train, test = stratified_split(dataset, cfg.test_fraction, mix64(trial_seed, SPLIT_STREAM))
    encoder = FeatureEncoder.fit(train)
    X_train, X_test = encoder.transform(train), encoder.transform(test)
    cfg.metric_config.validate(X_test.d)
    return TrialData(
        trial_seed=trial_seed,
        train=train,
        test=test,
        X_train=X_train,
        X_test=X_test,
        groups=partition_by_group(test),
    )


def model_seed(trial_seed: int, kind: ModelKind) -> int:
    return mix64(trial_seed, MODEL_STREAM, _MODEL_IDS[kind])


def fit_model(cfg: ExperimentConfig, data: TrialData, kind: ModelKind) -> Union[LinearModel, MlpModel]:
    train_config = cfg.train_config.with_seed(model_seed(data.trial_seed, kind))
    return train_model(kind, data.X_train.X, data.train.labels, train_config)


def capped_groups(cfg: ExperimentConfig, data: TrialData) -> GroupSplit:
    """Keeps at most ``max_instances_per_group`` test instances per group, drawn without replacement."""
    cap = cfg.max_instances_per_group
    if cap is None:
        return data.groups
    rng = np.random.default_rng(mix64(data.trial_seed, CAP_STREAM))

    def cap_group(indices: tuple[int, ...]) -> tuple[int, ...]:
        if len(indices) <= cap:
            return indices
        return tuple(sorted(int(i) for i in rng.choice(np.array(indices), size=cap, replace=False)))

    return GroupSplit(d0=cap_group(data.groups.d0), d1=cap_group(data.groups.d1))


def group_accuracy(model, data: TrialData) -> tuple[float, float, float]:
    X, y = data.X_test.X, data.test.labels
    d0, d1 = list(data.groups.d0), list(data.groups.d1)
    return accuracy(model, X, y), accuracy(model, X[d0], y[d0]), accuracy(model, X[d1], y[d1])
