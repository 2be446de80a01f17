import numpy as np


def complexity(w, t: float, signed: bool = False) -> int:
    """Number of importances above ``t``, compared by magnitude unless ``signed``."""
    w = np.asarray(w, dtype=np.float64)
    return int(np.count_nonzero((w if signed else np.abs(w)) > t))
