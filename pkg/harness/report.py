import json
from pathlib import Path
from typing import Iterable, Union

import pandas as pd
import tabulate
from babel.numbers import format_decimal, format_percent

from disparity import TestMethod
from metrics import MetricName
from shared.util import Error, canonical_json

from .experiment import CellResult, ExperimentResult

REPORT_FORMATS = ("csv", "md", "json")
REPORT_LOCALE = "en_US"
RESULT_FILE = "result.json"
RUN_INFO_FILE = "run_info.json"

# marks p-values that did not come from exhaustive enumeration
APPROXIMATE_MARK = "†"


class ReportError(Error):
    pass


def format_p_value(p_value: float) -> str:
    return format_decimal(p_value, format="0.000", locale=REPORT_LOCALE)


def _flagged_p_value(cell: CellResult, markdown: bool) -> str:
    text = format_p_value(cell.result.p_value)
    if cell.result.method != TestMethod.exact:
        text += APPROXIMATE_MARK
    if cell.result.significant:
        text = f"**{text}**" if markdown else f"{text}*"
    return text


def _metrics(result: ExperimentResult) -> list[MetricName]:
    return list(dict.fromkeys(cell.metric for cell in result.cells))


def _grid(result: ExperimentResult, metric: MetricName, markdown: bool) -> pd.DataFrame:
    cells = [cell for cell in result.cells if cell.metric == metric]
    explainers = list(dict.fromkeys(cell.explainer for cell in cells))
    models = list(dict.fromkeys(cell.model for cell in cells))
    return pd.DataFrame(
        [
            [model.value]
            + [_flagged_p_value(result.cell(model, explainer, metric), markdown) for explainer in explainers]
            for model in models
        ],
        columns=["model"] + [explainer.display_name for explainer in explainers],
    )


def pvalues_frame(result: ExperimentResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "dataset": result.metadata.dataset,
                "model": cell.model.value,
                "explainer": cell.explainer.value,
                "metric": cell.metric.value,
                "u_statistic": cell.result.u_statistic,
                "p_value": cell.result.p_value,
                "significant": cell.result.significant,
                "method": cell.result.method.value,
                "normal_p_value": cell.result.normal_p_value,
            }
            for cell in result.cells
        ],
    )


def counts_frame(result: ExperimentResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "dataset": row.dataset,
                "model": row.model,
                "explainer": row.explainer,
                "count": row.count,
                "significant_metrics": ";".join(row.significant_metrics),
            }
            for row in result.counts.rows
        ],
    )


def group_means_frame(result: ExperimentResult) -> pd.DataFrame:
    """Per trial and cell, the group means with their spread, ready for external plotting."""
    return pd.DataFrame(
        [
            {
                "trial_seed": trial.trial_seed,
                "model": cell.model.value,
                "explainer": cell.explainer.value,
                "metric": cell.metric.value,
                "mean_group0": cell.mean_group0,
                "std_group0": cell.std_group0,
                "n0": cell.n0,
                "mean_group1": cell.mean_group1,
                "std_group1": cell.std_group1,
                "n1": cell.n1,
                "samples_file": cell.samples_file,
            }
            for trial in result.trials
            for cell in trial.cells
        ],
    )


def accuracy_frame(result: ExperimentResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "trial_seed": trial.trial_seed,
                "model": accuracy.model.value,
                "overall": accuracy.overall,
                "group0": accuracy.group0,
                "group1": accuracy.group1,
            }
            for trial in result.trials
            for accuracy in trial.accuracy
        ],
    )


def pvalues_markdown(result: ExperimentResult) -> str:
    sections = [f"# P-values ({result.metadata.dataset}, alpha={result.counts.alpha})"]
    for metric in _metrics(result):
        grid = _grid(result, metric, markdown=True)
        significant = sum(1 for cell in result.cells if cell.metric == metric and cell.result.significant)
        total = sum(1 for cell in result.cells if cell.metric == metric)
        sections.append(
            f"## {metric.display_name}: {significant}/{total} significant\n\n"
            + tabulate.tabulate(grid, headers="keys", tablefmt="github", showindex=False, disable_numparse=True),
        )
    sections.append(f"Bold cells have p < alpha. {APPROXIMATE_MARK} marks p-values from permutation sampling.")
    return "\n\n".join(sections) + "\n"


def counts_markdown(result: ExperimentResult) -> str:
    counts = result.counts
    explainers = list(dict.fromkeys(row.explainer for row in counts.rows))
    models = list(dict.fromkeys((row.dataset, row.model) for row in counts.rows))
    table = [
        [dataset, model] + [counts.row(dataset, model, explainer).count for explainer in explainers]
        for dataset, model in models
    ]
    summary = (
        f"{counts.significant_cells}/{counts.total_cells} cells significant "
        f"({format_percent(counts.significant_fraction, format='0.0%', locale=REPORT_LOCALE)}); "
        f"{counts.combinations_with_disparity}/{counts.total_combinations} combinations with at least one "
        f"({format_percent(counts.combination_fraction, format='0%', locale=REPORT_LOCALE)})"
    )
    return (
        "# Significant disparities per combination\n\n"
        + tabulate.tabulate(table, headers=["dataset", "model"] + explainers, tablefmt="github")
        + f"\n\n{summary}\n"
    )


def result_json(result: ExperimentResult) -> str:
    return canonical_json(json.loads(result.to_json()))


def _write_csv(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


def _write_text(text: str, path: Path) -> Path:
    path.write_text(text, "utf-8")
    return path


def emit_report(
    result: ExperimentResult,
    output_dir: Union[str, Path],
    formats: Iterable[str] = REPORT_FORMATS,
) -> list[Path]:
    formats = set(formats)
    unknown = formats - set(REPORT_FORMATS)
    if unknown:
        raise ReportError(f"Unknown report format(s): {', '.join(sorted(unknown))}")

    output_dir = Path(output_dir)
    written = []
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        if "csv" in formats:
            written.append(_write_csv(pvalues_frame(result), output_dir / "pvalues.csv"))
            for metric in _metrics(result):
                written.append(
                    _write_csv(_grid(result, metric, markdown=False), output_dir / f"pvalues_{metric.value}.csv"),
                )
            written.append(_write_csv(counts_frame(result), output_dir / "counts.csv"))
            written.append(_write_csv(group_means_frame(result), output_dir / "group_means.csv"))
            written.append(_write_csv(accuracy_frame(result), output_dir / "accuracy.csv"))
        if "md" in formats:
            written.append(_write_text(pvalues_markdown(result), output_dir / "pvalues.md"))
            written.append(_write_text(counts_markdown(result), output_dir / "counts.md"))
        if "json" in formats:
            written.append(_write_text(result_json(result), output_dir / RESULT_FILE))
        if result.wall_time is not None:
            run_info = {"wall_time_seconds": result.wall_time, "config_hash": result.metadata.config_hash}
            written.append(_write_text(canonical_json(run_info), output_dir / RUN_INFO_FILE))
    except OSError as e:
        raise ReportError(f"Cannot write report to {output_dir}: {e}")
    return written


def load_result(path: Union[str, Path]) -> ExperimentResult:
    path = Path(path)
    try:
        return ExperimentResult.from_json(path.read_text("utf-8"))
    except OSError as e:
        raise ReportError(f"Cannot read result {path}: {e}")
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
        raise ReportError(f"Invalid result file {path}: {e}")
