import os
from pathlib import Path
from typing import Optional, Union

import click

from harness import ExperimentConfig
from models import ModelKind

# `xaudit audit` exits with this code when any cell shows a significant disparity
DISPARITY_EXIT_CODE = 2


def click_config_option():
    return click.option(
        "-c",
        "--config",
        "config_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="Experiment config (JSON)",
    )


def click_threads_option():
    return click.option(
        "-j",
        "--threads",
        envvar="XAUDIT_THREADS",
        type=click.IntRange(min=0),
        default=0,
        show_default=True,
        help="Worker threads, 0 uses every CPU",
    )


def click_output_option():
    return click.option(
        "-o",
        "--output-dir",
        type=click.Path(file_okay=False),
        default=None,
        help="Output directory, defaults to the config's output_dir",
    )


def resolve_threads(threads: int) -> int:
    return threads if threads > 0 else os.cpu_count() or 1


def resolve_output_dir(cfg: ExperimentConfig, output_dir: Optional[str]) -> Path:
    return Path(output_dir if output_dir is not None else cfg.output_dir)


def checkpoint_path(output_dir: Union[str, Path], kind: ModelKind, trial_seed: int) -> Path:
    return Path(output_dir) / "models" / f"{kind.value.lower()}-trial-{trial_seed}.json"


def explanations_path(output_dir: Union[str, Path], checkpoint: Union[str, Path], method_name: str) -> Path:
    return Path(output_dir) / "explanations" / f"{Path(checkpoint).stem}-{method_name}.csv"
