import logging
from dataclasses import replace
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from datasets.types import Dataset, FeatureTransform
from numerics.types import frozen

logger = logging.getLogger(__name__)


def _base_transform(d: Dataset) -> FeatureTransform:
    if d.transform is not None:
        return d.transform
    return FeatureTransform(raw_names=tuple(d.feature_names), categories={})


def _compose(base: FeatureTransform, kept_local: np.ndarray, low: np.ndarray, high: np.ndarray) -> FeatureTransform:
    """Fold a new column selection and range onto whatever ``base`` already applies."""
    if not base.ranges:
        return replace(
            base,
            kept=tuple(int(j) for j in kept_local),
            ranges=tuple((float(lo), float(hi)) for lo, hi in zip(low, high)),
        )
    kept, ranges = [], []
    for j, a, b in zip(kept_local, low, high):
        lo, hi = base.ranges[j]
        half = (hi - lo) / 2.0
        kept.append(base.kept[j])
        ranges.append((float(lo + (a + 1.0) * half), float(lo + (b + 1.0) * half)))
    return replace(base, kept=tuple(kept), ranges=tuple(ranges))


def normalize(d: Dataset, *, train_indices: Optional[np.ndarray] = None) -> Dataset:
    """
    Map every feature column affinely onto [-1, 1].

    Column ranges come from the rows in ``train_indices`` (all rows when
    omitted), so validation and test rows may land slightly outside the
    interval. Columns constant on those rows are dropped.
    """
    reference = d.x if train_indices is None else d.x[np.asarray(train_indices, dtype=np.intp)]
    if reference.shape[0] == 0:
        raise ValidationError("cannot normalize with an empty training part.", code="insufficient_data")
    low = reference.min(axis=0)
    high = reference.max(axis=0)
    varying = high > low
    if not np.any(varying):
        raise ValidationError(
            f"{d.name}: every feature column is constant on the training rows.",
            code="unusable_dataset",
        )
    if not np.all(varying):
        dropped = [d.feature_names[j] if j < len(d.feature_names) else str(j) for j in np.flatnonzero(~varying)]
        logger.warning(f"{d.name}: dropping constant feature columns {dropped}")
    kept_local = np.flatnonzero(varying)
    low, high = low[kept_local], high[kept_local]

    already_scaled = bool(d.transform and d.transform.ranges)
    if already_scaled and kept_local.size == d.input_dim and np.all(low == -1.0) and np.all(high == 1.0):
        return d

    x = 2.0 * (d.x[:, kept_local] - low) / (high - low) - 1.0
    names = tuple(d.feature_names[j] for j in kept_local) if d.feature_names else ()
    return replace(
        d,
        x=frozen(x),
        feature_names=names,
        transform=_compose(_base_transform(d), kept_local, low, high),
    )


def one_hot(labels: np.ndarray, num_classes: int) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.intp)
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise ValidationError(
            f"class index outside [0, {num_classes}).",
            code="unseen_label",
        )
    return frozen(np.eye(num_classes, dtype=np.float64)[labels].reshape(labels.size, num_classes))


def encode_targets(d: Dataset) -> Dataset:
    """One-hot classification targets; regression targets pass through."""
    if d.targets_encoded:
        return d
    if not d.task.is_classification:
        return replace(d, targets_encoded=True)
    labels = d.labels if d.labels is not None else d.t[:, 0].astype(np.intp)
    return replace(
        d,
        t=one_hot(labels, d.task.num_classes),
        labels=frozen(np.asarray(labels, dtype=np.intp)),
        targets_encoded=True,
    )


def decode_targets(y: np.ndarray) -> np.ndarray:
    """Row argmax of network outputs."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 2 or y.shape[1] < 2:
        raise ValidationError("argmax decoding needs one output column per class.", code="shape_mismatch")
    return np.argmax(y, axis=1)


def decode_labels(indices: np.ndarray, class_labels) -> list:
    class_labels = list(class_labels)
    decoded = []
    for index in np.asarray(indices, dtype=np.intp):
        if not 0 <= index < len(class_labels):
            raise ValidationError(
                f"class index {index} has no label (model knows {len(class_labels)} classes).",
                code="unseen_label",
            )
        decoded.append(class_labels[index])
    return decoded
