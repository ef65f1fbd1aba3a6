"""
Cross-method summary tables built from finished sweeps.

Rows are plain lists so that the export service can write them as CSV or
XLSX without knowing about sweep types.
"""
import logging
from typing import Optional

from datasets.types import Dataset, Split
from experiments.selectors.curve_selectors import (
    error_peak,
    flat_after_minimum,
    peak_in_window,
    regularized_below_unregularized,
)
from experiments.services.critical_services import DEFAULT_WINDOW_FRACTION, detect_critical
from experiments.services.selection_services import best_record, near_optimal_size
from experiments.services.sweep_services import sweep
from experiments.types import MethodConfig, SweepRecord
from stats.services.summary_services import confidence_interval
from stats.services.ttest_services import t_test

logger = logging.getLogger(__name__)

OPTIMAL_COLUMNS = ("method", "m", "mean_err", "std_err", "ci_low", "ci_high", "lambda", "significant")
COMPARISON_COLUMNS = ("method", "selection", "m", "mean_err", "std_err", "lambda", "significant")
TIMING_COLUMNS = ("method", "m", "median_wall_time_s", "n_trials")
DIAGNOSTIC_COLUMNS = (
    "method",
    "m_critical",
    "window",
    "peak_m",
    "peak_err",
    "peak_in_window",
    "rank_at_peak",
    "flat_after_minimum",
    "below_unregularized",
)


def _significant_winner(entries: list, confidence: float, equal_var: bool) -> Optional[str]:
    """
    Label of the lowest-error entry when a t-test separates it from every
    other entry. ``entries`` are (label, record) pairs.
    """
    if len(entries) < 2:
        return None
    label, winner = min(entries, key=lambda entry: entry[1].mean_err)
    separated = all(
        t_test(winner.test_summary, other.test_summary, confidence, equal_var=equal_var).significant
        for other_label, other in entries
        if other_label != label
    )
    return label if separated else None


def optimal_performance(
    sweeps: dict, methods: dict, *, confidence: float = 0.95, equal_var: bool = False
) -> list[list]:
    """
    Best mean test error per regularized method, with its hidden size, the
    confidence interval of the mean and lambda. The best method is flagged
    significant when a t-test separates it from every other method's best.
    """
    entries = [
        (label, best_record(records)) for label, records in sweeps.items() if methods[label].regularized
    ]
    winner = _significant_winner(entries, confidence, equal_var)
    rows = []
    for label, best in entries:
        low, high = confidence_interval(best.test_summary, confidence)
        rows.append([label, best.m, best.mean_err, best.std_err, low, high, methods[label].lam, label == winner])
    return rows


def compare_methods(sweeps: dict, methods: dict, *, confidence: float = 0.95, equal_var: bool = False) -> list[list]:
    """
    One row per method: near-optimal size for regularized methods, best size
    for the others. The row with the lowest error is flagged significant when
    a t-test separates it from every other row.
    """
    entries = []
    for label, records in sweeps.items():
        cfg = methods[label]
        if cfg.regularized:
            chosen = near_optimal_size(records, confidence=confidence, equal_var=equal_var)
            record = next(r for r in records if r.m == chosen.m)
            selection = "near_optimal"
        else:
            record = best_record(records)
            selection = "best"
        entries.append((label, selection, record, cfg.lam))

    winner = _significant_winner([(label, record) for label, _, record, _ in entries], confidence, equal_var)
    return [
        [label, selection, record.m, record.mean_err, record.std_err, lam, label == winner]
        for label, selection, record, lam in entries
    ]


def curve_diagnostics(
    sweeps: dict,
    methods: dict,
    *,
    detection_sweeps: Optional[dict] = None,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> list[list]:
    """
    Shape of each error curve: its critical region (from the method's own
    min-sigma/threshold ratios), where the error peaks, the numerical rank of
    H there, whether the curve stays flat after its minimum and, for
    regularized methods with a swept unregularized counterpart, whether the
    regularized validation error stays below it.
    """
    swept = {**(detection_sweeps or {}), **sweeps}
    rows = []
    for label, records in sweeps.items():
        if not any(r.valid for r in records):
            logger.warning(f"{label}: no valid records, no curve diagnostics")
            continue
        region = detect_critical(records, window_fraction=window_fraction)
        peak = error_peak(records)
        below = None
        cfg = methods[label]
        if cfg.regularized:
            plain = swept.get(cfg.unregularized().label)
            if plain is not None:
                below = regularized_below_unregularized(records, plain)
        rows.append(
            [
                label,
                "absent" if region.absent else region.m_critical,
                "" if region.absent else f"{region.window[0]}-{region.window[1]}",
                peak.m,
                peak.mean_err,
                not region.absent and peak_in_window(records, region),
                peak.rank,
                flat_after_minimum(records),
                below,
            ]
        )
    return rows


def timing_table(
    d: Dataset,
    split: Split,
    methods: list[MethodConfig],
    m: int,
    trials: int,
    *,
    base_seed: int = 0,
) -> list[list]:
    """Median wall time of one training step (init, H and solve) at hidden size ``m``."""
    rows = []
    for cfg in methods:
        record: SweepRecord = sweep(d, split, cfg, [m], trials, base_seed=base_seed, timing=True)[0]
        rows.append([cfg.label, m, record.wall_time_s, record.n_trials])
        logger.info(f"{cfg.label}: median training step at m={m} took {record.wall_time_s * 1e3:.3f} ms")
    return rows

