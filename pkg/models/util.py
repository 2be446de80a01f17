import numpy as np
from scipy.special import expit

from .errors import DegenerateLabelsError, ShapeError

_EPS = np.finfo(np.float64).eps


def squash(z: np.ndarray) -> np.ndarray:
    """Logistic function kept strictly inside (0, 1)."""
    return np.clip(expit(z), _EPS, 1.0 - _EPS)


def as_batch(x, d: int) -> tuple[np.ndarray, bool]:
    X = np.asarray(x, dtype=np.float64)
    single = X.ndim == 1
    X = np.atleast_2d(X)
    if X.ndim != 2 or X.shape[1] != d:
        raise ShapeError(f"Expected input with {d} feature(s), got shape {np.shape(x)}")
    return X, single


def unbatch(values: np.ndarray, single: bool):
    return values[0] if single else values


def check_training_data(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or len(X) != len(y):
        raise ShapeError(f"Training matrix {X.shape} does not match {len(y)} label(s)")
    if len(y) < 2 or np.unique(y).size < 2:
        raise DegenerateLabelsError(f"Training labels must contain both classes, got {np.unique(y).tolist()}")
    return X, y
