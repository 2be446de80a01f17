from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np
import pandas as pd

from models import Model
from shared.util import Error

from .config import (
    ExplainerConfig,
    ExplainerMethod,
    IntGradConfig,
    KernelShapConfig,
    LimeConfig,
    SmoothGradConfig,
)
from .gradients import integrated_gradients, smoothgrad, vanilla_grad
from .kernelshap import all_coalitions, kernel_shap, shapley_kernel
from .surrogate import lime

# (x, seed) -> importances, the model and config already bound
ExplainFn = Callable[[np.ndarray, int], np.ndarray]


class ExplanationError(Error):
    pass


@dataclass(frozen=True, eq=False)
class Explanation:
    importances: np.ndarray
    instance_index: int
    method: ExplainerMethod
    seed: int

    def __post_init__(self):
        if self.importances.ndim != 1 or not np.all(np.isfinite(self.importances)):
            raise ExplanationError(f"{self.method.value} produced a non-finite or malformed explanation")


def _explanation(importances, method: ExplainerMethod, seed: int, instance_index: int) -> Explanation:
    return Explanation(np.asarray(importances, dtype=np.float64), instance_index, method, seed)


def explain_vanilla_grad(model: Model, x, instance_index: int = 0) -> Explanation:
    w = vanilla_grad(model, np.asarray(x, dtype=np.float64))
    return _explanation(w, ExplainerMethod.vanillagrad, 0, instance_index)


def explain_smoothgrad(model: Model, x, cfg: ExplainerConfig, seed: int, instance_index: int = 0) -> Explanation:
    w = smoothgrad(model, np.asarray(x, dtype=np.float64), cfg, seed)
    return _explanation(w, ExplainerMethod.smoothgrad, seed, instance_index)


def explain_intgrad(model: Model, x, cfg: ExplainerConfig, seed: int = 0, instance_index: int = 0) -> Explanation:
    w = integrated_gradients(model, np.asarray(x, dtype=np.float64), cfg)
    return _explanation(w, ExplainerMethod.intgrad, seed, instance_index)


def explain_lime(model: Model, x, cfg: ExplainerConfig, seed: int, instance_index: int = 0) -> Explanation:
    w = lime(model, np.asarray(x, dtype=np.float64), cfg, seed)
    return _explanation(w, ExplainerMethod.lime, seed, instance_index)


def explain_kernelshap(model: Model, x, cfg: ExplainerConfig, seed: int, instance_index: int = 0) -> Explanation:
    w = kernel_shap(model, np.asarray(x, dtype=np.float64), cfg, seed)
    return _explanation(w, ExplainerMethod.kernelshap, seed, instance_index)


def explain(
    method: ExplainerMethod,
    model: Model,
    x,
    cfg: ExplainerConfig,
    seed: int,
    instance_index: int = 0,
) -> Explanation:
    if method == ExplainerMethod.vanillagrad:
        return explain_vanilla_grad(model, x, instance_index)
    return {
        ExplainerMethod.smoothgrad: explain_smoothgrad,
        ExplainerMethod.intgrad: explain_intgrad,
        ExplainerMethod.lime: explain_lime,
        ExplainerMethod.kernelshap: explain_kernelshap,
    }[method](model, x, cfg, seed, instance_index)


def bind(method: ExplainerMethod, model: Model, cfg: ExplainerConfig) -> ExplainFn:
    """Explainer as a plain ``(x, seed) -> importances`` function, the form the metrics consume."""

    def explain_fn(x: np.ndarray, seed: int) -> np.ndarray:
        return explain(method, model, x, cfg, seed).importances

    return explain_fn


EXPLANATION_CSV_PREFIX = ("instance_index", "method", "replicate", "seed")


def write_explanations(
    path: Union[str, Path],
    rows: Iterable[tuple[Explanation, int]],
    feature_names: Sequence[str],
):
    """One row per (instance, method, replicate); importance columns follow ``feature_names`` order."""
    records = [
        (explanation.instance_index, explanation.method.value, replicate, explanation.seed, *explanation.importances)
        for explanation, replicate in rows
    ]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = list(EXPLANATION_CSV_PREFIX) + list(feature_names)
    pd.DataFrame.from_records(records, columns=columns).to_csv(path, index=False)


__all__ = (
    "ExplainFn",
    "Explanation",
    "ExplanationError",
    "ExplainerConfig",
    "ExplainerMethod",
    "IntGradConfig",
    "KernelShapConfig",
    "LimeConfig",
    "SmoothGradConfig",
    "all_coalitions",
    "bind",
    "explain",
    "explain_intgrad",
    "explain_kernelshap",
    "explain_lime",
    "explain_smoothgrad",
    "explain_vanilla_grad",
    "integrated_gradients",
    "kernel_shap",
    "shapley_kernel",
    "write_explanations",
)
