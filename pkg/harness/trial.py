import asyncio
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from dataclasses_json import Undefined, config, dataclass_json

from dataio import Dataset
from explainers import ExplainerConfig, ExplainerMethod, bind
from metrics import (
    MetricName,
    complexity,
    ground_truth_fidelity,
    inconsistency,
    instability,
    prediction_gap,
)
from models import ModelKind, ground_truth_weights
from shared.seeding import mix64
from shared.util import Error

from .config import ExperimentConfig
from .pipeline import TrialData, capped_groups, fit_model, group_accuracy, load_source, prepare_trial

# replicate slot of the prediction-gap noise stream, far from the explanation replicates
PREDICTION_GAP_REPLICATE = 1 << 32

SAMPLE_COLUMNS = ("model", "instance_index", "group", "method", "metric", "value", "seed")


class TrialError(Error):
    pass


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class InstanceSample:
    model: ModelKind
    instance_index: int
    group: int
    method: ExplainerMethod
    metric: MetricName
    value: float
    seed: int


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class CellSummary:
    model: ModelKind
    explainer: ExplainerMethod
    metric: MetricName
    mean_group0: float
    mean_group1: float
    std_group0: float
    std_group1: float
    n0: int
    n1: int
    samples_file: Optional[str] = None


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class ModelAccuracy:
    model: ModelKind
    overall: float
    group0: float
    group1: float


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class TrialResult:
    trial_seed: int
    n_train: int
    n_test: int
    cells: list[CellSummary]
    accuracy: list[ModelAccuracy]
    samples_file: Optional[str] = None
    samples: list[InstanceSample] = field(default_factory=list, metadata=config(exclude=lambda _: True))

    def cell(self, model: ModelKind, explainer: ExplainerMethod, metric: MetricName) -> Optional[CellSummary]:
        return next(
            (c for c in self.cells if (c.model, c.explainer, c.metric) == (model, explainer, metric)),
            None,
        )


def instance_seed(trial_seed: int, method: ExplainerMethod, position: int, replicate: int = 0) -> int:
    return mix64(trial_seed, method.method_id, position, replicate)


def instance_seeds(trial_seed: int, method: ExplainerMethod, position: int, count: int) -> list[int]:
    """The canonical seed (replicate 0) followed by replicates 1..count."""
    return [instance_seed(trial_seed, method, position, replicate) for replicate in range(count + 1)]


def evaluate_instance(
    cfg: ExperimentConfig,
    data: TrialData,
    model_kind: ModelKind,
    model,
    explainer_cfg: ExplainerConfig,
    method: ExplainerMethod,
    position: int,
) -> list[InstanceSample]:
    """All scheduled metrics of one explainer on one test instance. Every seed derives from the trial seed."""
    metric_cfg = cfg.metric_config
    signed = metric_cfg.signed_importances
    x = data.X_test.X[position]
    explain_fn = bind(method, model, explainer_cfg)
    canonical = instance_seed(data.trial_seed, method, position)
    w = explain_fn(x, canonical)

    def sample(metric: MetricName, value: float, seed: int = canonical) -> InstanceSample:
        group = int(data.test.groups[position])
        return InstanceSample(model_kind, position, group, method, metric, float(value), seed)

    samples = []
    for metric in cfg.scheduled_metrics(model_kind):
        if metric == MetricName.ground_truth_fidelity:
            samples.append(sample(metric, ground_truth_fidelity(w, ground_truth_weights(model), metric_cfg.k, signed)))
        elif metric == MetricName.prediction_gap:
            seed = instance_seed(data.trial_seed, method, position, PREDICTION_GAP_REPLICATE)
            value = prediction_gap(model, x, w, metric_cfg, seed, onehot_mask=data.X_test.onehot_mask)
            samples.append(sample(metric, value, seed))
        elif metric == MetricName.instability:
            neighbour_seeds = instance_seeds(data.trial_seed, method, position, metric_cfg.m_stability)[1:]
            value = instability(explain_fn, x, metric_cfg, canonical, reference=w, neighbour_seeds=neighbour_seeds)
            samples.append(sample(metric, value))
        elif metric == MetricName.inconsistency:
            seeds = instance_seeds(data.trial_seed, method, position, metric_cfg.m_consistency)
            value = inconsistency(explain_fn, x, seeds, reference=w)
            samples.append(sample(metric, value))
        elif metric == MetricName.complexity:
            samples.append(sample(metric, complexity(w, metric_cfg.t, signed)))
    return samples


def trial_explainer_config(cfg: ExperimentConfig, data: TrialData) -> ExplainerConfig:
    """KernelSHAP falls back to the training column means as its background."""
    if cfg.explainer_config.kernelshap.background is not None:
        return cfg.explainer_config
    return cfg.explainer_config.with_background(data.X_train.X.mean(axis=0))


def summarize(cfg: ExperimentConfig, samples: list[InstanceSample], samples_file: Optional[str]) -> list[CellSummary]:
    """Per-cell group means, reduced in a fixed (instance index) order."""
    frame = pd.DataFrame(
        {
            "model": [s.model for s in samples],
            "method": [s.method for s in samples],
            "metric": [s.metric for s in samples],
            "group": [s.group for s in samples],
            "instance_index": [s.instance_index for s in samples],
            "value": [s.value for s in samples],
        },
    )
    cells = []
    for model_kind in cfg.model_kinds:
        for method in cfg.explainer_kinds:
            for metric in cfg.scheduled_metrics(model_kind):
                selected = frame[(frame.model == model_kind) & (frame.method == method) & (frame.metric == metric)]
                selected = selected.sort_values("instance_index", kind="stable")
                values0 = selected.loc[selected.group == 0, "value"].to_numpy()
                values1 = selected.loc[selected.group == 1, "value"].to_numpy()
                cells.append(
                    CellSummary(
                        model=model_kind,
                        explainer=method,
                        metric=metric,
                        mean_group0=float(np.mean(values0)),
                        mean_group1=float(np.mean(values1)),
                        std_group0=float(np.std(values0)),
                        std_group1=float(np.std(values1)),
                        n0=len(values0),
                        n1=len(values1),
                        samples_file=samples_file,
                    ),
                )
    return cells


def write_samples(path: Union[str, Path], samples: list[InstanceSample]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame.from_records(
        [(s.model.value, s.instance_index, s.group, s.method.value, s.metric.value, s.value, s.seed) for s in samples],
        columns=list(SAMPLE_COLUMNS),
    ).to_csv(path, index=False, float_format="%.17g")


def samples_path(output_dir: Union[str, Path], trial_seed: int) -> Path:
    return Path(output_dir) / "samples" / f"trial-{trial_seed}.csv"


async def run_trial_async(
    cfg: ExperimentConfig,
    trial_seed: int,
    dataset: Dataset,
    executor: Executor,
    output_dir: Optional[Union[str, Path]] = None,
) -> TrialResult:
    loop = asyncio.get_running_loop()
    try:
        data = await loop.run_in_executor(executor, prepare_trial, cfg, dataset, trial_seed)
        # models are trained one after another inside a trial
        models = {}
        for kind in cfg.model_kinds:
            models[kind] = await loop.run_in_executor(executor, fit_model, cfg, data, kind)

        explainer_cfg = trial_explainer_config(cfg, data)
        groups = capped_groups(cfg, data)
        positions = sorted(groups.d0 + groups.d1)
        tasks = [
            loop.run_in_executor(
                executor,
                evaluate_instance,
                cfg,
                data,
                kind,
                models[kind],
                explainer_cfg,
                method,
                position,
            )
            for kind in cfg.model_kinds
            for method in cfg.explainer_kinds
            for position in positions
        ]
        samples = [sample for batch in await asyncio.gather(*tasks) for sample in batch]
    except Error as e:
        raise TrialError(f"Trial {trial_seed} failed: {e}")

    samples_file = None
    if output_dir is not None:
        path = samples_path(output_dir, trial_seed)
        write_samples(path, samples)
        samples_file = path.relative_to(output_dir).as_posix()

    accuracies = []
    for kind, model in models.items():
        overall, group0, group1 = group_accuracy(model, data)
        accuracies.append(ModelAccuracy(model=kind, overall=overall, group0=group0, group1=group1))

    return TrialResult(
        trial_seed=trial_seed,
        n_train=len(data.train),
        n_test=len(data.test),
        cells=summarize(cfg, samples, samples_file),
        accuracy=accuracies,
        samples_file=samples_file,
        samples=samples,
    )


def run_trial(
    cfg: ExperimentConfig,
    trial_seed: int,
    dataset: Optional[Dataset] = None,
    threads: int = 1,
    output_dir: Optional[Union[str, Path]] = None,
) -> TrialResult:
    dataset = load_source(cfg.dataset) if dataset is None else dataset
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as executor:
        return asyncio.run(run_trial_async(cfg, trial_seed, dataset, executor, output_dir))
