import numpy as np
from django.core.exceptions import ValidationError

from numerics.types import SvdFactors

MACHINE_EPSILON = float(np.finfo(np.float64).eps)


def default_threshold(f: SvdFactors, rows: int, cols: int) -> float:
    """Conventional rank tolerance ``max(rows, cols) * eps * sigma_1`` (0 for a zero matrix)."""
    largest = f.largest
    if largest == 0.0:
        return 0.0
    return max(rows, cols) * MACHINE_EPSILON * largest


def numerical_rank(f: SvdFactors, tau: float) -> int:
    return int(np.count_nonzero(f.sigma > tau))


def min_sigma_ratio(f: SvdFactors, tau: float) -> float:
    """
    Smallest singular value over the truncation threshold.

    A ratio below one means the pseudoinverse is already discarding
    directions: the hidden layer has entered the numerically unstable regime.
    """
    if not tau > 0:
        raise ValidationError(
            f"ratio is undefined for threshold {tau}; the threshold must be > 0.",
            code="undefined_ratio",
        )
    return f.smallest / tau
