"""
The full benchmark protocol for one dataset.

For every requested method: regularized methods without a fixed lambda first
sweep their unregularized counterpart, locate the critical region on it and
tune lambda there; then every method is swept over the whole m-range with
its final configuration.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

from datasets.types import Dataset, Split
from experiments.services.critical_services import DEFAULT_WINDOW_FRACTION, detect_critical
from experiments.services.sweep_services import DEFAULT_FAILURE_BUDGET, sweep
from experiments.services.tuning_services import tune_lambda
from experiments.types import MethodConfig, SweepRecord, TuningResult

logger = logging.getLogger(__name__)


@dataclass
class ProtocolResult:
    methods: dict = field(default_factory=dict)
    sweeps: dict = field(default_factory=dict)
    tunings: dict = field(default_factory=dict)
    # unregularized sweeps run only for critical-region detection
    detection_sweeps: dict = field(default_factory=dict)

    def invalid_records(self) -> list[SweepRecord]:
        return [r for records in self.sweeps.values() for r in records if not r.valid]


def run_protocol(
    d: Dataset,
    split: Split,
    methods: list[MethodConfig],
    m_range,
    trials: int,
    *,
    lambda_grid,
    base_seed: int = 0,
    workers: int = 1,
    failure_budget: float = DEFAULT_FAILURE_BUDGET,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
    timing: bool = False,
    progress: Optional[Callable[[SweepRecord], None]] = None,
) -> ProtocolResult:
    m_values = list(m_range)
    options = {"base_seed": base_seed, "workers": workers, "failure_budget": failure_budget}
    result = ProtocolResult()

    def unregularized_sweep(cfg: MethodConfig) -> list[SweepRecord]:
        plain = cfg.unregularized()
        if plain.label in result.sweeps and result.methods[plain.label] == plain:
            return result.sweeps[plain.label]
        if plain.label not in result.detection_sweeps:
            result.detection_sweeps[plain.label] = sweep(d, split, plain, m_values, trials, timing=timing, **options)
        return result.detection_sweeps[plain.label]

    # Unregularized methods first so their sweeps double as detection sweeps.
    ordered = sorted(methods, key=lambda cfg: cfg.regularized)
    for cfg in ordered:
        if cfg.regularized and cfg.lam is None:
            region = detect_critical(unregularized_sweep(cfg), window_fraction=window_fraction)
            tuning: TuningResult = tune_lambda(
                d, split, cfg, region, lambda_grid, trials, m_values=m_values, **options
            )
            result.tunings[cfg.label] = tuning
            cfg = cfg.with_lambda(tuning.lam_star)
        result.methods[cfg.label] = cfg
        result.sweeps[cfg.label] = sweep(d, split, cfg, m_values, trials, timing=timing, progress=progress, **options)

    # Report in the order the methods were requested.
    order = [cfg.label for cfg in methods]
    result.methods = {label: result.methods[label] for label in order}
    result.sweeps = {label: result.sweeps[label] for label in order}
    return result
