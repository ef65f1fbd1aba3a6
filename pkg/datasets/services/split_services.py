"""
Deterministic train/validation/test splitting.

Part sizes use largest-remainder rounding: each part gets floor(N * f) rows and
the leftover rows go to the parts with the largest fractional remainders, ties
going to the earlier part. 150 rows at (0.5, 0.25, 0.25) give 75/38/37.
Classification splits are stratified: each class is shuffled on its own and
spread over the parts so that its count in every part is the floor or the
ceiling of its exact share, while the part sizes stay the global ones.
"""
import logging

import numpy as np
from django.core.exceptions import ValidationError
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from datasets.types import Dataset, Split
from numerics.types import frozen

logger = logging.getLogger(__name__)

DEFAULT_FRACTIONS = (0.5, 0.25, 0.25)
FRACTION_TOLERANCE = 1e-9


def validate_fractions(fractions) -> tuple:
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3:
        raise ValidationError(
            f"fractions must give train, validation and test shares, got {len(fractions)} values.",
            code="invalid",
        )
    if any(not np.isfinite(f) or f <= 0 for f in fractions):
        raise ValidationError(f"fractions must all be positive, got {list(fractions)}.", code="invalid")
    if abs(sum(fractions) - 1.0) > FRACTION_TOLERANCE:
        raise ValidationError(f"fractions must sum to 1, got {sum(fractions)!r}.", code="invalid")
    return fractions


def largest_remainder(total: int, fractions) -> list:
    quotas = [total * f for f in fractions]
    counts = [int(np.floor(q)) for q in quotas]
    order = sorted(range(len(quotas)), key=lambda k: (-(quotas[k] - counts[k]), k))
    for k in order[: total - sum(counts)]:
        counts[k] += 1
    return counts


def _stratified_counts(class_sizes: list, totals: list, fractions) -> list:
    """
    Per-class part counts whose column sums equal ``totals``.

    Every count is the floor or the ceiling of the class's exact share. Which
    cells round up is decided by a max flow from classes (their leftover rows)
    to parts (their missing rows) over the cells with a fractional share.
    """
    quotas = np.outer(class_sizes, fractions)
    counts = np.floor(quotas + FRACTION_TOLERANCE).astype(np.int64)
    fractional = quotas - counts > FRACTION_TOLERANCE
    left = np.asarray(class_sizes) - counts.sum(axis=1)
    need = np.asarray(totals) - counts.sum(axis=0)

    n_classes, n_parts = counts.shape
    source, sink = 0, n_classes + n_parts + 1
    capacity = np.zeros((sink + 1, sink + 1), dtype=np.int32)
    capacity[source, 1:n_classes + 1] = left
    capacity[1:n_classes + 1, n_classes + 1:sink] = fractional
    capacity[n_classes + 1:sink, sink] = need
    result = maximum_flow(csr_matrix(capacity), source, sink)
    if result.flow_value != left.sum():
        raise ValidationError(
            f"class sizes {list(class_sizes)} cannot be spread over parts of {list(totals)} rows.",
            code="stratification",
        )
    counts += result.flow.toarray()[1:n_classes + 1, n_classes + 1:sink]
    return counts.tolist()


def split(d: Dataset, fractions=DEFAULT_FRACTIONS, seed: int = 0) -> Split:
    fractions = validate_fractions(fractions)
    n = d.size
    totals = largest_remainder(n, fractions)
    if min(totals) < 1:
        raise ValidationError(
            f"{d.name}: {n} rows cannot fill three nonempty parts at fractions {list(fractions)}.",
            code="insufficient_data",
        )
    rng = np.random.Generator(np.random.PCG64(seed))
    parts = [[], [], []]

    stratified = d.task.is_classification and d.labels is not None
    if stratified:
        classes = np.unique(d.labels)
        members = [np.flatnonzero(d.labels == c) for c in classes]
        counts = _stratified_counts([len(m) for m in members], totals, fractions)
        for label, indices, row in zip(classes, members, counts):
            shuffled = rng.permutation(indices)
            if min(row) < 1:
                raise ValidationError(
                    f"{d.name}: class {d.class_labels[label] if d.class_labels else label} "
                    f"({len(indices)} rows) cannot appear in every split part.",
                    code="stratification",
                )
            start = 0
            for k, count in enumerate(row):
                parts[k].append(shuffled[start:start + count])
                start += count
    else:
        shuffled = rng.permutation(n)
        start = 0
        for k, count in enumerate(totals):
            parts[k].append(shuffled[start:start + count])
            start += count

    train, validation, test = (frozen(np.sort(np.concatenate(p)).astype(np.intp)) for p in parts)
    logger.debug(f"{d.name}: split {n} rows into {len(train)}/{len(validation)}/{len(test)}")
    return Split(
        train=train,
        validation=validation,
        test=test,
        fractions=fractions,
        seed=seed,
        stratified=stratified,
    )
