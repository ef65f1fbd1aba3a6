"""Read-only checks over sweep curves (lists of SweepRecord in ascending m)."""
import numpy as np

from experiments.types import CriticalRegion, SweepRecord
from stats.services.summary_services import pooled_std


def moving_average(values, window: int = 21) -> np.ndarray:
    """Centered moving average; windows shrink at the ends of the curve."""
    values = np.asarray(values, dtype=np.float64)
    half = window // 2
    return np.array([values[max(0, i - half):i + half + 1].mean() for i in range(values.size)])


def curve_pooled_std(records: list[SweepRecord], *, validation: bool = False) -> float:
    summaries = [r.validation_summary if validation else r.test_summary for r in records if r.valid]
    return pooled_std(*summaries)


def error_peak(records: list[SweepRecord]) -> SweepRecord:
    return max((r for r in records if r.valid), key=lambda r: r.mean_err)


def peak_in_window(records: list[SweepRecord], region: CriticalRegion) -> bool:
    return region.contains(error_peak(records).m)


def flat_after_minimum(records: list[SweepRecord], window: int = 21) -> bool:
    """After its global minimum the smoothed error never rises by more than one pooled std."""
    valid = [r for r in records if r.valid]
    smoothed = moving_average([r.mean_err for r in valid], window)
    lowest = int(np.argmin(smoothed))
    return float(smoothed[lowest:].max() - smoothed[lowest]) <= curve_pooled_std(valid)


def regularized_below_unregularized(regularized: list[SweepRecord], unregularized: list[SweepRecord]) -> bool:
    """At every shared m the regularized validation error stays within 2 pooled std of the unregularized one."""
    plain = {r.m: r for r in unregularized if r.valid}
    for record in regularized:
        other = plain.get(record.m)
        if other is None or not record.valid:
            continue
        tolerance = 2.0 * pooled_std(record.validation_summary, other.validation_summary)
        if record.val_mean_err > other.val_mean_err + tolerance:
            return False
    return True
