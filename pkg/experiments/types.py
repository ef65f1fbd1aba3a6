"""
Value types of the benchmark protocol.

Method labels follow the usual naming: ``HypT`` / ``Sigm`` for tanh / sigmoid
hidden units with the scaled (+-1/sqrt(M)) init, ``-reg`` / ``-unreg`` for
Tikhonov versus plain pseudoinversion, and ``ELM`` for sigmoid units with
fixed (-1, 1) weights and no regularization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from django.core.exceptions import ValidationError

from network.types import ActivationKind, InitKind, InitRegime
from numerics.types import validate_lambda
from stats.types import SampleSummary

ELM = "ELM"


@dataclass(frozen=True)
class MethodConfig:
    label: str
    activation: ActivationKind
    init: InitRegime
    regularized: bool
    lam: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "activation", ActivationKind(self.activation))
        if self.label == ELM and (
            self.activation is not ActivationKind.SIGMOID
            or self.init != InitRegime.fixed(1.0)
            or self.regularized
        ):
            raise ValidationError("ELM means sigmoid units, fixed (-1, 1) init and no regularization.", code="invalid")
        if self.lam is not None:
            if not self.regularized:
                raise ValidationError(f"{self.label}: an unregularized method takes no lambda.", code="invalid")
            object.__setattr__(self, "lam", validate_lambda(self.lam))

    @property
    def solve_lambda(self) -> Optional[float]:
        """Lambda handed to the solver: None selects plain pseudoinversion."""
        if not self.regularized:
            return None
        if self.lam is None:
            raise ValidationError(f"{self.label}: lambda has not been chosen yet.", code="invalid")
        return self.lam

    def with_lambda(self, lam: float) -> "MethodConfig":
        if not self.regularized:
            raise ValidationError(f"{self.label} is not a regularized method.", code="invalid")
        return replace(self, lam=lam)

    def unregularized(self) -> "MethodConfig":
        """Same hidden layer, solved without regularization (used for critical-region detection)."""
        if not self.regularized:
            return self
        label = self.label[: -len("-reg")] + "-unreg" if self.label.endswith("-reg") else f"{self.label}-unreg"
        return replace(self, label=label, regularized=False, lam=None)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "activation": self.activation.value,
            "init": self.init.as_dict(),
            "regularized": self.regularized,
            "lambda": self.lam,
        }


PRESETS = {
    "HypT-reg": MethodConfig("HypT-reg", ActivationKind.TANH, InitRegime.scaled(), regularized=True),
    "Sigm-reg": MethodConfig("Sigm-reg", ActivationKind.SIGMOID, InitRegime.scaled(), regularized=True),
    "HypT-unreg": MethodConfig("HypT-unreg", ActivationKind.TANH, InitRegime.scaled(), regularized=False),
    "Sigm-unreg": MethodConfig("Sigm-unreg", ActivationKind.SIGMOID, InitRegime.scaled(), regularized=False),
    ELM: MethodConfig(ELM, ActivationKind.SIGMOID, InitRegime.fixed(1.0), regularized=False),
}


def method_from_label(label: str) -> MethodConfig:
    try:
        return PRESETS[label]
    except KeyError:
        raise ValidationError(
            f"unknown method '{label}' (presets: {', '.join(PRESETS)}).",
            code="invalid",
        )


def custom_method(
    label: str,
    *,
    activation: str,
    init: str = InitKind.SCALED.value,
    half_width: float = 1.0,
    regularized: bool = True,
    lam: Optional[float] = None,
) -> MethodConfig:
    regime = InitRegime.scaled() if InitKind(init) is InitKind.SCALED else InitRegime.fixed(half_width)
    return MethodConfig(label, ActivationKind(activation), regime, regularized=regularized, lam=lam)


@dataclass(frozen=True)
class TrialResult:
    m: int
    trial: int
    seed: int
    validation_err: float
    test_err: float
    min_ratio: float
    wall_time: float
    rank: int = 0


class TrialFailure(Exception):
    """A single (method, m, trial) evaluation that could not produce errors."""

    def __init__(self, *, method: str, m: int, trial: int, seed: int, reason: str):
        self.method = method
        self.m = m
        self.trial = trial
        self.seed = seed
        self.reason = reason
        super().__init__(f"{method} m={m} trial={trial} seed={seed}: {reason}")

    def __reduce__(self):
        return (_rebuild_failure, (self.method, self.m, self.trial, self.seed, self.reason))


def _rebuild_failure(method, m, trial, seed, reason):
    return TrialFailure(method=method, m=m, trial=trial, seed=seed, reason=reason)


SWEEP_COLUMNS = (
    "method",
    "dataset",
    "m",
    "mean_err",
    "std_err",
    "min_ratio",
    "n_trials",
    "wall_time_s",
    "n_failed",
    "val_mean_err",
    "val_std_err",
    "valid",
)


@dataclass(frozen=True)
class SweepRecord:
    """
    Aggregate over the trials at one hidden size. Errors are test errors,
    ``val_*`` the validation errors of the same trials. ``n_trials`` counts
    successful trials only. ``rank`` is the median numerical rank of H,
    kept for reports and left out of the sweep CSV.
    """
    method: str
    dataset: str
    m: int
    mean_err: float
    std_err: float
    min_ratio: float
    n_trials: int
    wall_time_s: float
    n_failed: int = 0
    val_mean_err: float = math.nan
    val_std_err: float = math.nan
    valid: bool = True
    rank: float = math.nan

    @property
    def test_summary(self) -> SampleSummary:
        return SampleSummary(n=self.n_trials, mean=self.mean_err, std=self.std_err)

    @property
    def validation_summary(self) -> SampleSummary:
        return SampleSummary(n=self.n_trials, mean=self.val_mean_err, std=self.val_std_err)

    def as_row(self) -> list:
        return [
            self.method,
            self.dataset,
            self.m,
            self.mean_err,
            self.std_err,
            self.min_ratio,
            self.n_trials,
            self.wall_time_s,
            self.n_failed,
            self.val_mean_err,
            self.val_std_err,
            self.valid,
        ]


@dataclass(frozen=True)
class CriticalRegion:
    """
    ``m_critical`` is the first hidden size whose median min-sigma/threshold
    ratio is below one; None when the ratio never drops below one. ``window``
    is where lambda tuning looks; for an absent region it is the fallback
    window chosen by the tuner, with ``fallback`` set.
    """
    m_critical: Optional[int]
    window: Optional[tuple[int, int]]
    non_monotone: bool = False
    fallback: bool = False

    @property
    def absent(self) -> bool:
        return self.m_critical is None

    def contains(self, m: int) -> bool:
        return self.window is not None and self.window[0] <= m <= self.window[1]


@dataclass(frozen=True)
class TuningResult:
    lam_star: float
    region: CriticalRegion
    m_values: tuple
    # (lambda, mean validation error, number of evaluations) in grid order
    errors: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class NearOptimal:
    m: int
    mean_err: float
    std_err: float
    best_m: int
    best_err: float
