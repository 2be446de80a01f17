import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from dataclasses_json import Undefined, dataclass_json

from shared.util import require


class ExplainerMethod(enum.Enum):
    lime = "lime"
    kernelshap = "kernelshap"
    smoothgrad = "smoothgrad"
    intgrad = "intgrad"
    vanillagrad = "vanillagrad"

    @property
    def method_id(self) -> int:
        return _METHOD_IDS[self]

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def deterministic(self) -> bool:
        return self in (ExplainerMethod.intgrad, ExplainerMethod.vanillagrad)


# stable ids feed the seed derivation, never renumber
_METHOD_IDS = {
    ExplainerMethod.lime: 1,
    ExplainerMethod.kernelshap: 2,
    ExplainerMethod.smoothgrad: 3,
    ExplainerMethod.intgrad: 4,
    ExplainerMethod.vanillagrad: 5,
}

_DISPLAY_NAMES = {
    ExplainerMethod.lime: "LIME",
    ExplainerMethod.kernelshap: "SHAP",
    ExplainerMethod.smoothgrad: "SmoothGrad",
    ExplainerMethod.intgrad: "IntGrad",
    ExplainerMethod.vanillagrad: "VanillaGrad",
}


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class SmoothGradConfig:
    noise_std: float = 1.0
    samples: int = 1000


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class IntGradConfig:
    # None means the all-zeros vector, i.e. the training mean in raw space
    baseline: Optional[list[float]] = None
    steps: int = 50


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class LimeConfig:
    samples: int = 5000
    # None means 0.75 * sqrt(d)
    kernel_width: Optional[float] = None
    ridge_penalty: float = 1.0
    perturb_std: float = 1.0

    def kernel_width_for(self, d: int) -> float:
        return self.kernel_width if self.kernel_width is not None else 0.75 * math.sqrt(d)


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class KernelShapConfig:
    samples: int = 1000
    # filled with the training-set column means by the harness
    background: Optional[list[float]] = None


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass(frozen=True)
class ExplainerConfig:
    smoothgrad: SmoothGradConfig = field(default_factory=SmoothGradConfig)
    intgrad: IntGradConfig = field(default_factory=IntGradConfig)
    lime: LimeConfig = field(default_factory=LimeConfig)
    kernelshap: KernelShapConfig = field(default_factory=KernelShapConfig)

    def validate(self) -> "ExplainerConfig":
        require(self.smoothgrad.samples >= 1, "smoothgrad.samples must be at least 1")
        require(self.intgrad.steps >= 1, "intgrad.steps must be at least 1")
        require(self.lime.samples >= 1, "lime.samples must be at least 1")
        require(self.lime.kernel_width is None or self.lime.kernel_width > 0, "lime.kernel_width must be positive")
        require(self.lime.perturb_std >= 0, "lime.perturb_std must be non-negative")
        require(self.kernelshap.samples >= 1, "kernelshap.samples must be at least 1")
        return self

    def with_background(self, background: np.ndarray) -> "ExplainerConfig":
        return replace(self, kernelshap=replace(self.kernelshap, background=[float(v) for v in background]))
