"""
Hidden-size sweeps.

Each (m, trial) pair is an independent trial with its own derived seed. With
``workers > 1`` trials run in a process pool; results come back in submission
order, so the reduction over (m, trial) and therefore the records are the
same for any worker count.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

import numpy as np
from django.core.exceptions import ValidationError

from datasets.types import Dataset, Split
from experiments.services.seed_services import trial_seeds
from experiments.services.trial_services import run_trial
from experiments.types import MethodConfig, SweepRecord, TrialFailure, TrialResult

logger = logging.getLogger(__name__)

DEFAULT_FAILURE_BUDGET = 0.10

# Worker-process state, set once per process by _init_worker.
_worker_state = {}


def _init_worker(d: Dataset, split: Split, cfg: MethodConfig) -> None:
    _worker_state["job"] = (d, split, cfg)


def _run_task(task: tuple[int, int, int]):
    d, split, cfg = _worker_state["job"]
    m, trial, seed = task
    try:
        return run_trial(d, split, cfg, m, seed, trial=trial)
    except TrialFailure as failure:
        return failure


def validate_m_range(m_values) -> list[int]:
    m_values = [int(m) for m in m_values]
    if not m_values:
        raise ValidationError("m_range must not be empty.", code="invalid")
    if m_values[0] < 1:
        raise ValidationError(f"hidden sizes must be >= 1, got {m_values[0]}.", code="invalid")
    if any(b <= a for a, b in zip(m_values, m_values[1:])):
        raise ValidationError("m_range must be strictly ascending.", code="invalid")
    return m_values


def _aggregate(
    cfg: MethodConfig,
    dataset: str,
    m: int,
    outcomes: list,
    *,
    failure_budget: float,
    timing: bool,
) -> SweepRecord:
    results = [o for o in outcomes if isinstance(o, TrialResult)]
    failures = [o for o in outcomes if isinstance(o, TrialFailure)]
    for failure in failures:
        logger.warning(f"trial failed and was excluded: {failure}")
    n = len(results)
    test = np.array([r.test_err for r in results])
    validation = np.array([r.validation_err for r in results])
    enough = n >= 2
    return SweepRecord(
        method=cfg.label,
        dataset=dataset,
        m=m,
        mean_err=float(test.mean()) if n else math.nan,
        std_err=float(test.std(ddof=1)) if enough else math.nan,
        min_ratio=float(np.median([r.min_ratio for r in results])) if n else math.nan,
        n_trials=n,
        wall_time_s=float(np.median([r.wall_time for r in results])) if (n and timing) else 0.0,
        n_failed=len(failures),
        val_mean_err=float(validation.mean()) if n else math.nan,
        val_std_err=float(validation.std(ddof=1)) if enough else math.nan,
        valid=enough and len(failures) <= failure_budget * len(outcomes),
        rank=float(np.median([r.rank for r in results])) if n else math.nan,
    )


def sweep(
    d: Dataset,
    split: Split,
    cfg: MethodConfig,
    m_range,
    trials: int,
    *,
    base_seed: int = 0,
    workers: int = 1,
    failure_budget: float = DEFAULT_FAILURE_BUDGET,
    timing: bool = False,
    progress: Optional[Callable[[SweepRecord], None]] = None,
) -> list[SweepRecord]:
    """
    One SweepRecord per hidden size in ``m_range``, each aggregating
    ``trials`` trials. A record is invalid when fewer than two trials
    succeeded or more than ``failure_budget`` of them failed.
    """
    if trials < 2:
        raise ValidationError(f"a sweep needs at least 2 trials, got {trials}.", code="insufficient_data")
    m_values = validate_m_range(m_range)
    tasks = trial_seeds(base_seed, m_values, trials)
    logger.info(
        f"sweep {cfg.label} on {d.name}: m={m_values[0]}..{m_values[-1]} ({len(m_values)} sizes), "
        f"{trials} trials, workers={workers}"
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(d, split, cfg)) as pool:
            outcomes = pool.map(_run_task, tasks, chunksize=max(1, trials // 4))
            outcomes = list(outcomes)
    else:
        _init_worker(d, split, cfg)
        outcomes = [_run_task(task) for task in tasks]

    records = []
    for index, m in enumerate(m_values):
        record = _aggregate(
            cfg,
            d.name,
            m,
            outcomes[index * trials:(index + 1) * trials],
            failure_budget=failure_budget,
            timing=timing,
        )
        if not record.valid:
            logger.warning(f"{cfg.label} m={m}: record invalid ({record.n_failed}/{trials} trials failed)")
        if progress is not None:
            progress(record)
        records.append(record)
    return records
