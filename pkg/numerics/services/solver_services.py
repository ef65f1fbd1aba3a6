"""
Least-squares solves for ``h @ w = t`` through the SVD of ``h``.

Both solvers accept precomputed ``factors`` so that a caller which already
decomposed ``h`` (to inspect its spectrum) does not pay for a second SVD.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from numerics.selectors.spectrum_selectors import default_threshold
from numerics.services.svd_services import svd
from numerics.types import (
    FilterFactors,
    SvdFactors,
    TruncationPolicy,
    as_matrix,
    frozen,
    validate_lambda,
)

logger = logging.getLogger(__name__)


def _check_system(h: np.ndarray, t: np.ndarray, factors: Optional[SvdFactors]) -> None:
    if h.shape[0] != t.shape[0]:
        raise ValidationError(
            f"t has {t.shape[0]} rows but h has {h.shape[0]}; the system h @ w = t needs equal row counts.",
            code="shape_mismatch",
        )
    if factors is not None and (factors.rows, factors.cols) != h.shape:
        raise ValidationError(
            f"factors describe a {factors.rows}x{factors.cols} matrix, h is {h.shape[0]}x{h.shape[1]}.",
            code="shape_mismatch",
        )


def inverted_spectrum(f: SvdFactors, policy: TruncationPolicy) -> np.ndarray:
    """Diagonal of Sigma^+: 1/sigma_i for kept directions, 0 for truncated ones."""
    sigma = f.sigma
    if policy.mode == "rank":
        if policy.rank > sigma.size:
            raise ValidationError(
                f"rank {policy.rank} exceeds min(rows, cols) = {sigma.size}.",
                code="invalid",
            )
        keep = np.zeros(sigma.size, dtype=bool)
        keep[:policy.rank] = sigma[:policy.rank] > 0
    else:
        if policy.mode == "threshold":
            tau = policy.threshold
        else:
            tau = default_threshold(f, f.rows, f.cols)
        keep = sigma > tau
    inverse = np.zeros_like(sigma)
    inverse[keep] = 1.0 / sigma[keep]
    return inverse


def _apply(f: SvdFactors, diagonal: np.ndarray, t: np.ndarray) -> np.ndarray:
    # V @ diag(d) @ U^T @ T without forming the diagonal matrix.
    return frozen(f.v @ (diagonal[:, None] * (f.u.T @ t)))


def pseudoinverse_solve(
    h,
    t,
    policy: Optional[TruncationPolicy] = None,
    *,
    factors: Optional[SvdFactors] = None,
) -> np.ndarray:
    """Minimum-norm least-squares solution ``H^+ T`` with thresholded Sigma^+."""
    h = as_matrix(h, name="h")
    t = as_matrix(t, name="t")
    _check_system(h, t, factors)
    f = factors if factors is not None else svd(h)
    return _apply(f, inverted_spectrum(f, policy or TruncationPolicy.default()), t)


def filter_factors(f: SvdFactors, lam) -> FilterFactors:
    """
    Tikhonov filter ``D_i = sigma_i / (sigma_i**2 + lambda)``.

    For lambda > 0 every factor is bounded by 1 / (2 sqrt(lambda)). For
    lambda == 0 the factors are plain reciprocals, and zero singular values get
    factor 0 (counted in ``zeroed``) as the pseudoinverse would do.
    """
    lam = validate_lambda(lam)
    sigma = f.sigma
    denominator = sigma * sigma + lam
    values = np.zeros_like(sigma)
    nonzero = denominator > 0
    values[nonzero] = sigma[nonzero] / denominator[nonzero]
    zeroed = int(np.count_nonzero(~nonzero))
    if zeroed:
        logger.debug(f"{zeroed} zero singular values filtered to 0 at lambda=0")
    return FilterFactors(values=frozen(values), lam=lam, zeroed=zeroed)


def tikhonov_solve(
    h,
    t,
    lam,
    *,
    factors: Optional[SvdFactors] = None,
) -> np.ndarray:
    """Regularized solution ``V D U^T T`` minimizing ||HW - T||^2 + lambda ||W||^2."""
    h = as_matrix(h, name="h")
    t = as_matrix(t, name="t")
    _check_system(h, t, factors)
    f = factors if factors is not None else svd(h)
    return _apply(f, filter_factors(f, lam).values, t)
