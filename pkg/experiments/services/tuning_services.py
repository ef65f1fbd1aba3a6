import logging
import math
from dataclasses import replace

from django.core.exceptions import ValidationError

from datasets.types import Dataset, Split
from experiments.services.critical_services import fallback_window
from experiments.services.sweep_services import DEFAULT_FAILURE_BUDGET, sweep
from experiments.types import CriticalRegion, MethodConfig, TuningResult
from numerics.types import validate_lambda

logger = logging.getLogger(__name__)


def validate_grid(grid) -> list[float]:
    grid = [validate_lambda(lam) for lam in grid]
    if not grid:
        raise ValidationError("the lambda grid is empty.", code="invalid")
    if any(lam <= 0 for lam in grid):
        raise ValidationError("lambda grid values must be > 0.", code="invalid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("the lambda grid must be sorted ascending without repeats.", code="invalid")
    return grid


def tuning_sizes(region: CriticalRegion, m_values=None) -> tuple[CriticalRegion, list[int]]:
    """Hidden sizes to tune on; an absent region falls back to the top decile of ``m_values``."""
    if region.absent:
        if not m_values:
            raise ValidationError("no critical region and no m-range to fall back on.", code="invalid")
        region = replace(region, window=fallback_window(m_values), fallback=True)
        logger.warning(f"no critical region; tuning over the top decile of the m-range {region.window}")
    low, high = region.window
    if m_values:
        sizes = [int(m) for m in m_values if low <= m <= high]
    else:
        sizes = list(range(low, high + 1))
    if not sizes:
        raise ValidationError(f"no swept hidden size falls inside the window {region.window}.", code="invalid")
    return region, sizes


def tune_lambda(
    d: Dataset,
    split: Split,
    cfg: MethodConfig,
    region: CriticalRegion,
    grid,
    trials: int,
    *,
    m_values=None,
    base_seed: int = 0,
    workers: int = 1,
    failure_budget: float = DEFAULT_FAILURE_BUDGET,
) -> TuningResult:
    """
    Grid search for lambda on the mean validation error over the region's
    hidden sizes and trials. Ties go to the larger lambda.
    """
    if not cfg.regularized:
        raise ValidationError(f"{cfg.label} is not regularized; nothing to tune.", code="invalid")
    grid = validate_grid(grid)
    region, sizes = tuning_sizes(region, m_values)

    errors = []
    best_lam, best_err = grid[-1], math.inf
    for lam in grid:
        records = sweep(
            d,
            split,
            cfg.with_lambda(lam),
            sizes,
            trials,
            base_seed=base_seed,
            workers=workers,
            failure_budget=failure_budget,
            timing=False,
        )
        evaluations = sum(r.n_trials for r in records)
        if evaluations:
            mean_err = sum(r.val_mean_err * r.n_trials for r in records if r.n_trials) / evaluations
        else:
            mean_err = math.nan
        errors.append((lam, mean_err, evaluations))
        logger.debug(f"{cfg.label} lambda={lam:g}: mean validation error {mean_err:.6g} over {evaluations} trials")
        if not math.isnan(mean_err) and mean_err <= best_err:
            best_lam, best_err = lam, mean_err

    logger.info(f"{cfg.label} on {d.name}: lambda*={best_lam:g} (validation error {best_err:.6g})")
    return TuningResult(lam_star=best_lam, region=region, m_values=tuple(sizes), errors=tuple(errors))
