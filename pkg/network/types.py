from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError
from scipy.special import expit

from datasets.types import FeatureTransform, TaskKind

# Identifier written next to every seed so a run can be replayed.
RNG_ALGORITHM = "numpy.PCG64"


class ActivationKind(str, Enum):
    SIGMOID = "sigmoid"
    TANH = "tanh"

    def apply(self, z: np.ndarray) -> np.ndarray:
        if self is ActivationKind.SIGMOID:
            # expit branches on the sign of z, so |z| > 700 does not overflow.
            return expit(z)
        return np.tanh(z)

    @property
    def bounds(self) -> tuple[float, float]:
        return (0.0, 1.0) if self is ActivationKind.SIGMOID else (-1.0, 1.0)


class InitKind(str, Enum):
    FIXED = "fixed"
    SCALED = "scaled"


@dataclass(frozen=True)
class InitRegime:
    """
    Input weights and hidden biases are uniform in (-a, a).

    ``fixed``: a is ``half_width``. ``scaled``: a = 1/sqrt(M), so the interval
    narrows as the hidden layer grows and pre-activations stay in the
    near-linear part of the activation. Biases use the same interval.
    """
    kind: InitKind = InitKind.SCALED
    half_width: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", InitKind(self.kind))
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise ValidationError("half_width must be a finite value > 0.", code="invalid")

    @classmethod
    def scaled(cls) -> "InitRegime":
        return cls(kind=InitKind.SCALED)

    @classmethod
    def fixed(cls, half_width: float = 1.0) -> "InitRegime":
        return cls(kind=InitKind.FIXED, half_width=float(half_width))

    def interval(self, m: int) -> float:
        if self.kind is InitKind.SCALED:
            return 1.0 / math.sqrt(m)
        return self.half_width

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "half_width": self.half_width}


@dataclass(frozen=True)
class Slfn:
    """
    Single hidden layer network. ``c`` is (P+1) x M: the last row holds the
    hidden biases, applied to a constant-1 input column. ``w`` is M x Q and is
    None until the network is trained. There is no output bias.
    """
    c: np.ndarray
    output_dim: int
    activation: ActivationKind
    init: InitRegime
    seed: int
    w: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "activation", ActivationKind(self.activation))
        if self.c.ndim != 2 or self.c.shape[0] < 2 or self.c.shape[1] < 1:
            raise ValidationError(f"c must be (P+1) x M with P, M >= 1, got shape {self.c.shape}.", code="shape_mismatch")
        if self.output_dim < 1:
            raise ValidationError("output_dim must be >= 1.", code="invalid")
        if self.w is not None:
            if self.w.shape != (self.hidden_dim, self.output_dim):
                raise ValidationError(
                    f"w must be {self.hidden_dim}x{self.output_dim}, got {self.w.shape[0]}x{self.w.shape[1]}.",
                    code="shape_mismatch",
                )
            if not np.all(np.isfinite(self.w)):
                raise ValidationError("output weights must be finite.", code="non_finite")

    @property
    def input_dim(self) -> int:
        return self.c.shape[0] - 1

    @property
    def hidden_dim(self) -> int:
        return self.c.shape[1]

    @property
    def is_trained(self) -> bool:
        return self.w is not None

    def with_weights(self, w: np.ndarray) -> "Slfn":
        return replace(self, w=w)


@dataclass(frozen=True)
class StoredModel:
    """A trained network plus everything ``predict`` needs to use it on raw rows."""
    net: Slfn
    method: str
    lam: Optional[float]
    task: TaskKind
    class_labels: tuple = ()
    transform: Optional[FeatureTransform] = None
    metrics: dict = field(default_factory=dict)
