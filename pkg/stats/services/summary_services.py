import math

import numpy as np
from django.core.exceptions import ValidationError
from scipy.special import stdtrit

from stats.types import SampleSummary


def summarize(samples) -> SampleSummary:
    values = np.asarray(samples, dtype=np.float64).ravel()
    if values.size < 2:
        raise ValidationError(
            f"at least two samples are needed for a standard deviation, got {values.size}.",
            code="insufficient_data",
        )
    if not np.all(np.isfinite(values)):
        raise ValidationError("samples must be finite.", code="non_finite")
    return SampleSummary(n=int(values.size), mean=float(values.mean()), std=float(values.std(ddof=1)))


def pooled_std(*summaries: SampleSummary) -> float:
    """Square root of the (n - 1)-weighted mean variance."""
    dof = sum(s.n - 1 for s in summaries)
    if dof <= 0:
        return 0.0
    return math.sqrt(sum((s.n - 1) * s.variance for s in summaries) / dof)


def confidence_interval(summary: SampleSummary, confidence: float = 0.95) -> tuple[float, float]:
    """Two-sided Student-t interval for the mean."""
    if not 0.0 < confidence < 1.0:
        raise ValidationError(f"confidence must lie in (0, 1), got {confidence}.", code="invalid")
    half = float(stdtrit(summary.n - 1, 0.5 + confidence / 2.0)) * summary.std / math.sqrt(summary.n)
    return summary.mean - half, summary.mean + half
