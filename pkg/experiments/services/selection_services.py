import logging

from django.core.exceptions import ValidationError

from experiments.types import NearOptimal, SweepRecord
from stats.services.ttest_services import t_test

logger = logging.getLogger(__name__)


def best_record(records: list[SweepRecord]) -> SweepRecord:
    """Lowest mean test error among valid records; the smallest m wins ties."""
    candidates = [r for r in records if r.valid]
    if not candidates:
        raise ValidationError("no valid sweep records.", code="insufficient_data")
    return min(candidates, key=lambda r: (r.mean_err, r.m))


def near_optimal_size(
    records: list[SweepRecord],
    *,
    confidence: float = 0.95,
    equal_var: bool = False,
) -> NearOptimal:
    """
    Smallest hidden size whose mean test error is not significantly worse
    than the best one in the sweep.
    """
    # Valid records have at least two successful trials.
    valid = sorted((r for r in records if r.valid), key=lambda r: r.m)
    if not valid:
        raise ValidationError(
            "significance needs at least 2 trials per hidden size.",
            code="insufficient_data",
        )
    best = best_record(valid)
    for record in valid:
        if record is best or not t_test(record.test_summary, best.test_summary, confidence, equal_var=equal_var).significant:
            logger.debug(f"{record.method}: near-optimal m={record.m} (best m={best.m})")
            return NearOptimal(
                m=record.m,
                mean_err=record.mean_err,
                std_err=record.std_err,
                best_m=best.m,
                best_err=best.mean_err,
            )
    raise AssertionError("the best record always qualifies")
