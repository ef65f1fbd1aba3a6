import logging
import math

from django.core.exceptions import ValidationError

from experiments.types import CriticalRegion, SweepRecord

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_FRACTION = 0.25


def _half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def critical_window(m_critical: int, fraction: float = DEFAULT_WINDOW_FRACTION) -> tuple[int, int]:
    """[max(1, m_c - W), m_c + W] with W = max(1, round(fraction * m_c))."""
    half = max(1, _half_up(fraction * m_critical))
    return max(1, m_critical - half), m_critical + half


def fallback_window(m_values) -> tuple[int, int]:
    """Top decile of the swept sizes, used when no crossing was found."""
    m_values = sorted(int(m) for m in m_values)
    if not m_values:
        raise ValidationError("no hidden sizes to choose a fallback window from.", code="invalid")
    count = max(1, math.ceil(len(m_values) / 10))
    return m_values[-count], m_values[-1]


def detect_critical(records: list[SweepRecord], *, window_fraction: float = DEFAULT_WINDOW_FRACTION) -> CriticalRegion:
    """
    First hidden size whose (median) min-sigma/threshold ratio drops below one.

    Records must come from an unregularized sweep in ascending m. A ratio
    that climbs back above one after the crossing is reported as
    ``non_monotone``; the first crossing is still the critical size.
    """
    if not records:
        raise ValidationError("no sweep records to inspect.", code="insufficient_data")
    if any(b.m <= a.m for a, b in zip(records, records[1:])):
        raise ValidationError("records must be in strictly ascending m.", code="invalid")
    if not 0 < window_fraction:
        raise ValidationError("window fraction must be > 0.", code="invalid")

    ratios = [(r.m, r.min_ratio) for r in records if not math.isnan(r.min_ratio)]
    crossing = next((index for index, (_, ratio) in enumerate(ratios) if ratio < 1.0), None)
    if crossing is None:
        logger.warning(f"{records[0].method} on {records[0].dataset}: min-sigma/threshold ratio never drops below 1")
        return CriticalRegion(m_critical=None, window=None)

    m_critical = ratios[crossing][0]
    non_monotone = any(ratio >= 1.0 for _, ratio in ratios[crossing + 1:])
    if non_monotone:
        logger.warning(f"{records[0].method}: ratio returns above 1 after the crossing at m={m_critical}")
    region = CriticalRegion(
        m_critical=m_critical,
        window=critical_window(m_critical, window_fraction),
        non_monotone=non_monotone,
    )
    logger.info(f"{records[0].method} on {records[0].dataset}: critical m={m_critical}, window {region.window}")
    return region
