import base64
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np
from dataclasses_json import Undefined, dataclass_json

from .config import ModelKind, TrainConfig
from .errors import CheckpointError
from .linear import LinearModel
from .mlp import MlpModel

CHECKPOINT_FORMAT_VERSION = 1
_FLOAT_DTYPE = np.dtype("<f8")


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class ParameterBlob:
    name: str
    shape: list[int]
    data: str  # base64 of little-endian float64

    @classmethod
    def pack(cls, name: str, values) -> "ParameterBlob":
        array = np.ascontiguousarray(np.asarray(values, dtype=_FLOAT_DTYPE))
        return cls(name=name, shape=list(array.shape), data=base64.b64encode(array.tobytes()).decode("ascii"))

    def unpack(self) -> np.ndarray:
        array = np.frombuffer(base64.b64decode(self.data), dtype=_FLOAT_DTYPE)
        if array.size != int(np.prod(self.shape, dtype=np.int64)):
            raise CheckpointError(f"Parameter {self.name} holds {array.size} values, shape says {self.shape}")
        return array.reshape(self.shape).astype(np.float64)


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class Architecture:
    kind: ModelKind
    widths: list[int]


@dataclass_json(undefined=Undefined.EXCLUDE)
@dataclass
class Checkpoint:
    architecture: Architecture
    parameters: list[ParameterBlob]
    train_config: TrainConfig
    seed: int
    feature_names: list[str] = field(default_factory=list)
    format_version: int = CHECKPOINT_FORMAT_VERSION

    @classmethod
    def from_model(
        cls,
        model: Union[LinearModel, MlpModel],
        train_config: TrainConfig,
        seed: int,
        feature_names: Optional[list[str]] = None,
    ) -> "Checkpoint":
        if isinstance(model, LinearModel):
            architecture = Architecture(kind=ModelKind.LR, widths=[model.d, 1])
            parameters = [
                ParameterBlob.pack("coefficients", model.coefficients),
                ParameterBlob.pack("intercept", [model.intercept]),
            ]
        else:
            architecture = Architecture(kind=ModelKind.NN, widths=list(model.widths))
            parameters = []
            for layer, (W, b) in enumerate(zip(model.layer_weights, model.layer_biases)):
                parameters += [ParameterBlob.pack(f"weight{layer}", W), ParameterBlob.pack(f"bias{layer}", b)]
        return cls(
            architecture=architecture,
            parameters=parameters,
            train_config=train_config,
            seed=seed,
            feature_names=list(feature_names or []),
        )

    def to_model(self) -> Union[LinearModel, MlpModel]:
        if self.format_version != CHECKPOINT_FORMAT_VERSION:
            raise CheckpointError(f"Unsupported checkpoint format version {self.format_version}")
        blobs = {blob.name: blob.unpack() for blob in self.parameters}
        try:
            if self.architecture.kind == ModelKind.LR:
                return LinearModel(coefficients=blobs["coefficients"], intercept=float(blobs["intercept"][0]))
            n_layers = len(self.architecture.widths) - 1
            return MlpModel(
                layer_weights=tuple(blobs[f"weight{layer}"] for layer in range(n_layers)),
                layer_biases=tuple(blobs[f"bias{layer}"] for layer in range(n_layers)),
            )
        except KeyError as e:
            raise CheckpointError(f"Checkpoint is missing parameter {e}")


def save_checkpoint(checkpoint: Checkpoint, path: Union[str, Path]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(checkpoint.to_dict(encode_json=True), indent=2, sort_keys=True) + "\n", "utf-8")


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    try:
        return Checkpoint.from_dict(json.loads(Path(path).read_text("utf-8")))
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
        raise CheckpointError(f"Cannot read checkpoint {path}: {e}")
