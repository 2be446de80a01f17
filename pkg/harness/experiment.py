import asyncio
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Optional, Union

import progressbar
from dataclasses_json import Undefined, config, dataclass_json

from disparity import DisparityResult, test_disparity
from explainers import ExplainerMethod
from metrics import MetricName
from models import ModelKind
from shared.seeding import mix64
from shared.util import Error, config_hash

from .config import ExperimentConfig
from .counts import CountsTable, PValueCell, aggregate_counts
from .pipeline import load_source
from .trial import TrialResult, run_trial_async

DISPARITY_STREAM = 4

VERSIONED_PACKAGES = ("xaudit", "numpy", "scipy", "pandas", "scikit-learn")


class ExperimentError(Error):
    def __init__(self, message: str, trial_error: Optional[Error] = None):
        super().__init__(message)
        self.trial_error = trial_error


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class CellResult:
    model: ModelKind
    explainer: ExplainerMethod
    metric: MetricName
    group0_means: list[float]
    group1_means: list[float]
    result: DisparityResult


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class ExperimentMetadata:
    config_hash: str
    dataset: str
    trial_seeds: list[int]
    versions: dict[str, str]
    max_instances_per_group: Optional[int] = None


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class ExperimentResult:
    cells: list[CellResult]
    counts: CountsTable
    trials: list[TrialResult]
    metadata: ExperimentMetadata
    # excluded from the bundle so that reruns stay byte-identical
    wall_time: Optional[float] = field(default=None, metadata=config(exclude=lambda _: True))

    def cell(self, model: ModelKind, explainer: ExplainerMethod, metric: MetricName) -> Optional[CellResult]:
        return next(
            (c for c in self.cells if (c.model, c.explainer, c.metric) == (model, explainer, metric)),
            None,
        )

    @property
    def any_significant(self) -> bool:
        return any(c.result.significant for c in self.cells)

    def pvalue_cells(self) -> list[PValueCell]:
        return pvalue_cells(self.metadata.dataset, self.cells)


def pvalue_cells(dataset: str, cells: list[CellResult]) -> list[PValueCell]:
    return [
        PValueCell(
            dataset=dataset,
            model=c.model.value,
            explainer=c.explainer.value,
            metric=c.metric.value,
            p_value=c.result.p_value,
        )
        for c in cells
    ]


def package_versions() -> dict[str, str]:
    versions = {}
    for package in VERSIONED_PACKAGES:
        try:
            versions[package] = version(package)
        except PackageNotFoundError:
            versions[package] = "unknown"
    return versions


def _disparity_seed(model: ModelKind, explainer: ExplainerMethod, metric: MetricName) -> int:
    return mix64(DISPARITY_STREAM, list(ModelKind).index(model), explainer.method_id, list(MetricName).index(metric))


def test_cells(cfg: ExperimentConfig, trials: list[TrialResult]) -> list[CellResult]:
    """One disparity test per cell over the per-trial group means, in configuration order."""
    cells = []
    for model in cfg.model_kinds:
        for explainer in cfg.explainer_kinds:
            for metric in cfg.scheduled_metrics(model):
                summaries = [trial.cell(model, explainer, metric) for trial in trials]
                group0 = [summary.mean_group0 for summary in summaries]
                group1 = [summary.mean_group1 for summary in summaries]
                result = test_disparity(
                    group0,
                    group1,
                    alpha=cfg.alpha,
                    trials=cfg.trials,
                    seed=_disparity_seed(model, explainer, metric),
                )
                cells.append(CellResult(model, explainer, metric, group0, group1, result))
    return cells


test_cells.__test__ = False


async def run_trials(
    cfg: ExperimentConfig,
    threads: int,
    show_progress: bool,
    output_dir: Optional[Union[str, Path]],
) -> list[TrialResult]:
    dataset = load_source(cfg.dataset)
    bar = (
        progressbar.ProgressBar(
            max_value=len(cfg.seeds),
            widgets=[
                progressbar.SimpleProgress(),
                " ",
                progressbar.Bar(marker="=", left="[", right="]"),
                " ",
                progressbar.Timer(),
            ],
            prefix="Running trials ",
            fd=sys.stderr,
        )
        if show_progress
        else None
    )
    finished = 0

    with ThreadPoolExecutor(max_workers=max(threads, 1)) as executor:

        async def tracked(trial_seed: int) -> TrialResult:
            nonlocal finished
            result = await run_trial_async(cfg, trial_seed, dataset, executor, output_dir)
            finished += 1
            if bar is not None:
                bar.update(finished)
            return result

        try:
            trials = await asyncio.gather(*(tracked(seed) for seed in cfg.seeds))
        finally:
            if bar is not None:
                bar.finish(dirty=finished < len(cfg.seeds))
    return list(trials)


def run_experiment(
    cfg: ExperimentConfig,
    threads: int = 1,
    show_progress: bool = False,
    output_dir: Optional[Union[str, Path]] = None,
) -> ExperimentResult:
    cfg.validate()
    started = time.perf_counter()
    try:
        trials = asyncio.run(run_trials(cfg, threads, show_progress, output_dir))
    except Error as e:
        raise ExperimentError(f"Experiment aborted: {e}", trial_error=e)

    cells = test_cells(cfg, trials)
    metadata = ExperimentMetadata(
        config_hash=config_hash(json.loads(cfg.to_json())),
        dataset=cfg.dataset.name,
        trial_seeds=cfg.seeds,
        versions=package_versions(),
        max_instances_per_group=cfg.max_instances_per_group,
    )
    result = ExperimentResult(
        cells=cells,
        counts=aggregate_counts(pvalue_cells(metadata.dataset, cells), alpha=cfg.alpha),
        trials=trials,
        metadata=metadata,
        wall_time=time.perf_counter() - started,
    )
    return result
