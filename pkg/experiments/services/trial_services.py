import logging
import math
import time

import numpy as np
from django.core.exceptions import ValidationError

from datasets.types import Dataset, Split
from experiments.types import MethodConfig, TrialFailure, TrialResult
from network.selectors.network_selectors import forward
from network.services.network_services import build_network, train_network
from network.types import Slfn
from numerics.exceptions import SvdConvergenceError
from numerics.selectors.spectrum_selectors import default_threshold, min_sigma_ratio, numerical_rank

logger = logging.getLogger(__name__)


def prediction_error(d: Dataset, net: Slfn, indices: np.ndarray) -> float:
    """RMSE for regression, misclassification fraction for classification."""
    y = forward(d.x[indices], net)
    if d.task.is_classification:
        return float(np.mean(np.argmax(y, axis=1) != d.labels[indices]))
    return float(np.sqrt(np.mean((y - d.t[indices]) ** 2)))


def run_trial(d: Dataset, split: Split, cfg: MethodConfig, m: int, seed: int, *, trial: int = 0) -> TrialResult:
    """
    Train one network on the training part and score it on the validation
    and test parts. ``wall_time`` covers weight init, H and the solve.
    """
    if m < 1:
        raise ValidationError(f"hidden size must be >= 1, got {m}.", code="invalid")
    lam = cfg.solve_lambda
    x_train, t_train = d.x[split.train], d.t[split.train]
    try:
        start = time.perf_counter()
        net = build_network(
            input_dim=d.input_dim,
            hidden_dim=m,
            output_dim=d.output_dim,
            activation=cfg.activation,
            init=cfg.init,
            seed=seed,
        )
        trained, factors = train_network(net, x_train, t_train, lam=lam)
        wall_time = time.perf_counter() - start
    except SvdConvergenceError as exc:
        raise TrialFailure(method=cfg.label, m=m, trial=trial, seed=seed, reason=str(exc)) from exc
    except ValidationError as exc:
        if exc.code != "non_finite":
            raise
        raise TrialFailure(method=cfg.label, m=m, trial=trial, seed=seed, reason=exc.message) from exc

    tau = default_threshold(factors, factors.rows, factors.cols)
    ratio = min_sigma_ratio(factors, tau) if tau > 0 else math.inf
    validation_err = prediction_error(d, trained, split.validation)
    test_err = prediction_error(d, trained, split.test)
    if not (math.isfinite(validation_err) and math.isfinite(test_err)):
        raise TrialFailure(method=cfg.label, m=m, trial=trial, seed=seed, reason="non-finite prediction error")
    return TrialResult(
        m=m,
        trial=trial,
        seed=seed,
        validation_err=validation_err,
        test_err=test_err,
        min_ratio=ratio,
        wall_time=wall_time,
        rank=numerical_rank(factors, tau),
    )
