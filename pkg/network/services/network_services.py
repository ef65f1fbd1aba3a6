from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from network.selectors.network_selectors import hidden_matrix
from network.types import ActivationKind, InitRegime, Slfn
from numerics.services.solver_services import pseudoinverse_solve, tikhonov_solve
from numerics.services.svd_services import svd
from numerics.types import SvdFactors, TruncationPolicy, as_matrix, frozen

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= int(seed) <= MAX_SEED:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed}.", code="invalid")
    return np.random.Generator(np.random.PCG64(int(seed)))


def init_weights(p: int, m: int, regime: InitRegime, seed: int) -> np.ndarray:
    """
    Draw the (p+1) x m input-weight matrix, bias row last.

    Every entry lies strictly inside (-a, a) with a from the regime; the same
    (p, m, regime, seed) always gives the same matrix.
    """
    if p < 1 or m < 1:
        raise ValidationError(f"need p >= 1 and m >= 1, got p={p}, m={m}.", code="invalid")
    a = regime.interval(m)
    low, high = np.nextafter(-a, 0.0), np.nextafter(a, 0.0)
    values = make_rng(seed).uniform(low, high, size=(p + 1, m))
    return frozen(np.clip(values, low, high))


def build_network(
    *,
    input_dim: int,
    hidden_dim: int,
    output_dim: int,
    activation: ActivationKind,
    init: InitRegime,
    seed: int,
) -> Slfn:
    return Slfn(
        c=init_weights(input_dim, hidden_dim, init, seed),
        output_dim=output_dim,
        activation=ActivationKind(activation),
        init=init,
        seed=int(seed),
    )


def solve_output_weights(
    h: np.ndarray,
    t: np.ndarray,
    *,
    lam: Optional[float] = None,
    factors: Optional[SvdFactors] = None,
    policy: Optional[TruncationPolicy] = None,
) -> np.ndarray:
    """Unregularized pseudoinversion when ``lam`` is None, Tikhonov otherwise (lam = 0 included)."""
    if lam is None:
        return pseudoinverse_solve(h, t, policy, factors=factors)
    return tikhonov_solve(h, t, lam, factors=factors)


def train_network(
    net: Slfn,
    x,
    t,
    *,
    lam: Optional[float] = None,
    policy: Optional[TruncationPolicy] = None,
) -> tuple[Slfn, SvdFactors]:
    """
    Fit the output weights of ``net`` on (x, t) in one step.

    Returns the trained network and the SVD of the training hidden output
    matrix, which callers use for the singular-value diagnostics.
    """
    t = as_matrix(t, name="t")
    if t.shape[1] != net.output_dim:
        raise ValidationError(
            f"targets have {t.shape[1]} columns, the network has {net.output_dim} outputs.",
            code="shape_mismatch",
        )
    h = hidden_matrix(x, net)
    factors = svd(h)
    w = solve_output_weights(h, t, lam=lam, factors=factors, policy=policy)
    return net.with_weights(w), factors
