"""
Dataset value types.

A Dataset keeps its feature matrix in raw units (categorical columns already
mapped to numbers) until ``normalize`` records the per-column ranges. The
FeatureTransform travels with trained models so that prediction inputs go
through exactly the same encoding and scaling.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from numerics.types import frozen

REGRESSION = "regression"
CLASSIFICATION = "classification"

ORDINAL = "ordinal"
ONEHOT = "onehot"


@dataclass(frozen=True)
class TaskKind:
    kind: str
    num_classes: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (REGRESSION, CLASSIFICATION):
            raise ValidationError(f"unknown task kind '{self.kind}'.", code="schema_error")
        if self.kind == CLASSIFICATION and (self.num_classes is None or self.num_classes < 2):
            raise ValidationError("classification needs num_classes >= 2.", code="schema_error")

    @property
    def is_classification(self) -> bool:
        return self.kind == CLASSIFICATION

    @classmethod
    def regression(cls) -> "TaskKind":
        return cls(kind=REGRESSION)

    @classmethod
    def classification(cls, num_classes: int) -> "TaskKind":
        return cls(kind=CLASSIFICATION, num_classes=int(num_classes))


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    role: str = "feature"
    type: str = "numeric"
    categories: tuple = ()


@dataclass(frozen=True)
class DatasetSchema:
    name: str
    task: str
    columns: tuple
    delimiter: str = ","
    header: bool = False
    missing: tuple = ("?", "")
    class_labels: tuple = ()
    categorical_encoding: str = ORDINAL

    @property
    def feature_columns(self) -> list:
        return [column for column in self.columns if column.role == "feature"]

    @property
    def target_column(self) -> ColumnSpec:
        return next(column for column in self.columns if column.role == "target")


def ordinal_levels(count: int) -> np.ndarray:
    """Evenly spaced codes in [-1, 1]; three categories map to -1, 0, 1."""
    if count == 1:
        return np.zeros(1)
    return np.linspace(-1.0, 1.0, count)


@dataclass(frozen=True)
class FeatureTransform:
    """Raw feature strings -> numeric columns -> kept columns -> [-1, 1]."""
    raw_names: tuple
    categories: dict
    encoding: str = ORDINAL
    kept: tuple = ()
    ranges: tuple = ()

    @property
    def input_width(self) -> int:
        return len(self.raw_names)

    def encoded_names(self) -> list:
        names = []
        for name in self.raw_names:
            levels = self.categories.get(name)
            if levels and self.encoding == ONEHOT:
                names.extend(f"{name}={level}" for level in levels)
            else:
                names.append(name)
        return names

    def encode_value(self, name: str, value: str, line: int) -> list:
        levels = self.categories.get(name)
        if not levels:
            try:
                return [float(value)]
            except ValueError:
                raise ValidationError(
                    f"line {line}: non-numeric value '{value}' in feature '{name}' "
                    f"(declare it categorical in the schema).",
                    code="schema_error",
                )
        if value not in levels:
            raise ValidationError(
                f"line {line}: unknown category '{value}' in feature '{name}' (expected one of {list(levels)}).",
                code="schema_error",
            )
        index = list(levels).index(value)
        if self.encoding == ONEHOT:
            return [1.0 if position == index else 0.0 for position in range(len(levels))]
        return [float(ordinal_levels(len(levels))[index])]

    def encode_row(self, values, line: int) -> list:
        encoded = []
        for name, value in zip(self.raw_names, values):
            encoded.extend(self.encode_value(name, value.strip(), line))
        return encoded

    def scale(self, x: np.ndarray) -> np.ndarray:
        """Keep the retained columns and map each training range onto [-1, 1]."""
        x = x[:, list(self.kept)]
        low = np.array([r[0] for r in self.ranges], dtype=np.float64)
        high = np.array([r[1] for r in self.ranges], dtype=np.float64)
        return frozen(2.0 * (x - low) / (high - low) - 1.0)

    def as_dict(self) -> dict:
        return {
            "raw_names": list(self.raw_names),
            "categories": {name: list(levels) for name, levels in sorted(self.categories.items())},
            "encoding": self.encoding,
            "kept": list(self.kept),
            "ranges": [[float(low), float(high)] for low, high in self.ranges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureTransform":
        return cls(
            raw_names=tuple(data["raw_names"]),
            categories={name: tuple(levels) for name, levels in data["categories"].items()},
            encoding=data["encoding"],
            kept=tuple(int(index) for index in data["kept"]),
            ranges=tuple((float(low), float(high)) for low, high in data["ranges"]),
        )


@dataclass(frozen=True)
class Dataset:
    """
    x is N x P. Before ``encode_targets`` a classification t holds the label
    index as a single column; afterwards t is N x num_classes one-hot and
    ``targets_encoded`` is set.
    """
    name: str
    x: np.ndarray
    t: np.ndarray
    task: TaskKind
    feature_names: tuple = ()
    class_labels: tuple = ()
    labels: Optional[np.ndarray] = None
    transform: Optional[FeatureTransform] = None
    targets_encoded: bool = False

    @property
    def size(self) -> int:
        return self.x.shape[0]

    @property
    def input_dim(self) -> int:
        return self.x.shape[1]

    @property
    def output_dim(self) -> int:
        return self.t.shape[1]

    @property
    def feature_ranges(self) -> Optional[tuple]:
        return self.transform.ranges if self.transform and self.transform.ranges else None

    def rows(self, indices) -> "Dataset":
        indices = np.asarray(indices, dtype=np.intp)
        return replace(
            self,
            x=frozen(self.x[indices]),
            t=frozen(self.t[indices]),
            labels=None if self.labels is None else frozen(self.labels[indices]),
        )


@dataclass(frozen=True)
class Split:
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    fractions: tuple = (0.5, 0.25, 0.25)
    seed: int = 0
    stratified: bool = field(default=False)

    @property
    def parts(self) -> tuple:
        return (self.train, self.validation, self.test)

    @property
    def sizes(self) -> tuple:
        return tuple(len(part) for part in self.parts)
