from .config import DatasetSource, ExperimentConfig
from .counts import CountsRow, CountsTable, IncompleteGridError, PValueCell, aggregate_counts
from .experiment import CellResult, ExperimentError, ExperimentMetadata, ExperimentResult, run_experiment
from .pipeline import TrialData, capped_groups, fit_model, group_accuracy, load_source, model_seed, prepare_trial
from .report import REPORT_FORMATS, ReportError, emit_report, load_result
from .trial import (
    CellSummary,
    InstanceSample,
    ModelAccuracy,
    TrialError,
    TrialResult,
    instance_seed,
    instance_seeds,
    run_trial,
    trial_explainer_config,
)

__all__ = (
    "CellResult",
    "CellSummary",
    "CountsRow",
    "CountsTable",
    "DatasetSource",
    "ExperimentConfig",
    "ExperimentError",
    "ExperimentMetadata",
    "ExperimentResult",
    "IncompleteGridError",
    "InstanceSample",
    "ModelAccuracy",
    "PValueCell",
    "REPORT_FORMATS",
    "ReportError",
    "TrialData",
    "TrialError",
    "TrialResult",
    "aggregate_counts",
    "capped_groups",
    "emit_report",
    "fit_model",
    "group_accuracy",
    "instance_seed",
    "instance_seeds",
    "load_result",
    "load_source",
    "model_seed",
    "prepare_trial",
    "run_experiment",
    "run_trial",
    "trial_explainer_config",
)
