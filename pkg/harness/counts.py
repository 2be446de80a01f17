from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from dataclasses_json import Undefined, dataclass_json

from metrics import MetricName
from models import ModelKind
from shared.util import Error

LINEAR_MODELS = frozenset({ModelKind.LR.value})
LINEAR_ONLY_METRICS = frozenset(metric.value for metric in MetricName if metric.linear_only)


class IncompleteGridError(Error):
    pass


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class PValueCell:
    dataset: str
    model: str
    explainer: str
    metric: str
    p_value: float
    # overrides ``p_value < alpha`` when set, e.g. for a published grid whose flags are authoritative
    significant: Optional[bool] = None

    def is_significant(self, alpha: float) -> bool:
        return self.significant if self.significant is not None else self.p_value < alpha


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class CountsRow:
    dataset: str
    model: str
    explainer: str
    count: int
    significant_metrics: list[str]


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class CountsTable:
    rows: list[CountsRow]
    alpha: float
    significant_cells: int
    total_cells: int
    combinations_with_disparity: int
    total_combinations: int

    @property
    def significant_fraction(self) -> float:
        return self.significant_cells / self.total_cells if self.total_cells else 0.0

    @property
    def combination_fraction(self) -> float:
        return self.combinations_with_disparity / self.total_combinations if self.total_combinations else 0.0

    def row(self, dataset: str, model: str, explainer: str) -> Optional[CountsRow]:
        return next((r for r in self.rows if (r.dataset, r.model, r.explainer) == (dataset, model, explainer)), None)


def _required_metrics(model: str, metrics: Sequence[str]) -> list[str]:
    if model in LINEAR_MODELS:
        return list(metrics)
    return [metric for metric in metrics if metric not in LINEAR_ONLY_METRICS]


def aggregate_counts(
    cells: Iterable[PValueCell],
    alpha: float = 0.05,
    expected_metrics: Optional[Sequence[str]] = None,
) -> CountsTable:
    """
    Counts the significant metrics of every (dataset, model, explainer) combination.

    The grid must be complete: every explainer of a dataset appears for each of its models, and every
    combination carries all ``expected_metrics`` (by default every metric seen anywhere in the grid),
    except linear-only metrics on non-linear models.
    """
    cells = list(cells)
    grid: dict[tuple[str, str, str], dict[str, PValueCell]] = defaultdict(dict)
    for cell in cells:
        by_metric = grid[(cell.dataset, cell.model, cell.explainer)]
        if cell.metric in by_metric:
            raise IncompleteGridError(f"Duplicate cell {cell.dataset}/{cell.model}/{cell.explainer}/{cell.metric}")
        by_metric[cell.metric] = cell

    metrics = list(expected_metrics) if expected_metrics is not None else sorted({cell.metric for cell in cells})
    explainers_by_dataset = defaultdict(set)
    models_by_dataset = defaultdict(set)
    for dataset, model, explainer in grid:
        explainers_by_dataset[dataset].add(explainer)
        models_by_dataset[dataset].add(model)

    for dataset in sorted(models_by_dataset):
        for model in sorted(models_by_dataset[dataset]):
            for explainer in sorted(explainers_by_dataset[dataset]):
                present = grid.get((dataset, model, explainer), {})
                missing = [metric for metric in _required_metrics(model, metrics) if metric not in present]
                if missing:
                    raise IncompleteGridError(
                        f"Missing p-values for {dataset}/{model}/{explainer}: {', '.join(missing)}",
                    )

    rows = []
    for (dataset, model, explainer), by_metric in grid.items():
        significant = [metric for metric, cell in by_metric.items() if cell.is_significant(alpha)]
        rows.append(CountsRow(dataset, model, explainer, len(significant), significant))

    return CountsTable(
        rows=rows,
        alpha=alpha,
        significant_cells=sum(row.count for row in rows),
        total_cells=len(cells),
        combinations_with_disparity=sum(1 for row in rows if row.count > 0),
        total_combinations=len(rows),
    )
