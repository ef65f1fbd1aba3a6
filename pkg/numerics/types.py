"""
Value types of the linear-algebra kernel.

Matrices are plain float64 numpy arrays. ``as_matrix`` is the single entry
point that validates them and freezes the buffer, so a Matrix handed to any
service can be shared between workers without copying.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError

ORTHOGONALITY_TOLERANCE = 1e-10


def as_matrix(values, *, name: str = "matrix") -> np.ndarray:
    """Return a read-only 2-D float64 copy of ``values``; 1-D input becomes a column."""
    array = np.array(values, dtype=np.float64)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise ValidationError(f"{name}: expected a 2-D matrix, got {array.ndim} dimensions.", code="shape_mismatch")
    rows, cols = array.shape
    if rows < 1 or cols < 1:
        raise ValidationError(f"{name}: matrix must have at least one row and one column, got {rows}x{cols}.", code="shape_mismatch")
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name}: entries must be finite.", code="non_finite")
    array.setflags(write=False)
    return array


def frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD ``h = u @ diag(sigma) @ v.T`` with ``p = min(rows, cols)``."""
    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def rows(self) -> int:
        return self.u.shape[0]

    @property
    def cols(self) -> int:
        return self.v.shape[0]

    @property
    def largest(self) -> float:
        return float(self.sigma[0]) if self.sigma.size else 0.0

    @property
    def smallest(self) -> float:
        return float(self.sigma[-1]) if self.sigma.size else 0.0

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.sigma) @ self.v.T


@dataclass(frozen=True)
class TruncationPolicy:
    mode: str = "default"
    threshold: float | None = None
    rank: int | None = None

    MODES = ("default", "threshold", "rank")

    def __post_init__(self):
        if self.mode not in self.MODES:
            raise ValidationError(f"unknown truncation mode '{self.mode}'.", code="invalid")
        if self.mode == "threshold":
            if self.threshold is None or not np.isfinite(self.threshold) or self.threshold < 0:
                raise ValidationError("explicit threshold must be a finite value >= 0.", code="invalid")
        if self.mode == "rank":
            if self.rank is None or self.rank < 0:
                raise ValidationError("rank must be a non-negative integer.", code="invalid")

    @classmethod
    def default(cls) -> "TruncationPolicy":
        return cls()

    @classmethod
    def explicit(cls, threshold: float) -> "TruncationPolicy":
        return cls(mode="threshold", threshold=float(threshold))

    @classmethod
    def keep_rank(cls, rank: int) -> "TruncationPolicy":
        return cls(mode="rank", rank=int(rank))


def validate_lambda(lam) -> float:
    """Regularization parameter check: finite and >= 0."""
    try:
        value = float(lam)
    except (TypeError, ValueError):
        raise ValidationError(f"'{lam}' is not a number.", code="invalid")
    if not np.isfinite(value) or value < 0:
        raise ValidationError("lambda must be finite and >= 0.", code="invalid")
    return value


@dataclass(frozen=True)
class FilterFactors:
    """Per-direction damping ``sigma / (sigma**2 + lambda)``.

    ``zeroed`` counts directions with sigma == 0 under lambda == 0; their
    factor is defined as 0 instead of dividing by zero.
    """
    values: np.ndarray
    lam: float
    zeroed: int = 0

    @property
    def has_zeroed(self) -> bool:
        return self.zeroed > 0
