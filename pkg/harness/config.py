import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from dataclasses_json import Undefined, dataclass_json

from dataio import BUILTIN_SCHEMAS, DatasetSchema, SyntheticSpec
from explainers import ExplainerConfig, ExplainerMethod
from metrics import MetricConfig, MetricName
from models import ModelKind, TrainConfig
from shared.util import ConfigError, require


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class DatasetSource:
    """Either a CSV ``path`` with its ``schema`` (inline object or path to a schema file) or a ``synthetic`` spec."""

    name: str = "dataset"
    path: Optional[str] = None
    schema: Optional[Any] = None
    synthetic: Optional[SyntheticSpec] = None
    synthetic_seed: int = 0

    def validate(self) -> "DatasetSource":
        require((self.path is None) != (self.synthetic is None), "Configure exactly one of dataset.path and .synthetic")
        require(self.path is None or self.schema is not None, "dataset.schema is required with dataset.path")
        if self.synthetic is not None:
            self.synthetic.validate()
        return self

    def resolved_schema(self) -> DatasetSchema:
        if self.synthetic is not None:
            return self.synthetic.dataset_schema
        return DatasetSchema.load(self.schema)


def _all(enum_type) -> list:
    return list(enum_type)


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class ExperimentConfig:
    dataset: DatasetSource
    model_kinds: list[ModelKind] = field(default_factory=lambda: _all(ModelKind))
    explainer_kinds: list[ExplainerMethod] = field(default_factory=lambda: _all(ExplainerMethod))
    metrics: list[MetricName] = field(default_factory=lambda: _all(MetricName))
    metric_config: MetricConfig = field(default_factory=MetricConfig)
    train_config: TrainConfig = field(default_factory=TrainConfig)
    explainer_config: ExplainerConfig = field(default_factory=ExplainerConfig)
    trials: int = 5
    trial_seeds: Optional[list[int]] = None
    alpha: float = 0.05
    test_fraction: float = 0.2
    max_instances_per_group: Optional[int] = None
    output_dir: str = "xaudit-output"

    @property
    def seeds(self) -> list[int]:
        return list(self.trial_seeds) if self.trial_seeds is not None else list(range(self.trials))

    def validate(self) -> "ExperimentConfig":
        self.dataset.validate()
        require(self.trials >= 1, f"trials must be at least 1, got {self.trials}")
        require(len(self.seeds) == self.trials, f"{self.trials} trial(s) but {len(self.seeds)} trial seed(s)")
        require(len(set(self.seeds)) == len(self.seeds), "Trial seeds must be distinct")
        require(len(self.model_kinds) > 0, "model_kinds is empty")
        require(len(self.explainer_kinds) > 0, "explainer_kinds is empty")
        require(len(self.metrics) > 0, "metrics is empty")
        require(0 < self.alpha < 1, f"alpha must lie in (0, 1), got {self.alpha}")
        require(0 < self.test_fraction < 1, f"test_fraction must lie in (0, 1), got {self.test_fraction}")
        require(
            self.max_instances_per_group is None or self.max_instances_per_group >= 1,
            "max_instances_per_group must be at least 1",
        )
        self.metric_config.validate()
        self.train_config.validate()
        self.explainer_config.validate()
        return self

    def scheduled_metrics(self, model_kind: ModelKind) -> list[MetricName]:
        """Ground-truth fidelity needs model coefficients, so it is only scheduled for linear models."""
        return [metric for metric in self.metrics if model_kind == ModelKind.LR or not metric.linear_only]

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text("utf-8"))
            cfg = cls.from_dict(data)
        except OSError as e:
            raise ConfigError(f"Cannot read config {path}: {e}")
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
            raise ConfigError(f"Invalid config {path}: {e}")

        # relative dataset and schema paths are relative to the config file
        base = path.parent
        if cfg.dataset.path is not None and not Path(cfg.dataset.path).is_absolute():
            cfg.dataset.path = str(base / cfg.dataset.path)
        schema = cfg.dataset.schema
        if isinstance(schema, str) and schema not in BUILTIN_SCHEMAS and not Path(schema).is_absolute():
            cfg.dataset.schema = str(base / cfg.dataset.schema)
        return cfg.validate()
