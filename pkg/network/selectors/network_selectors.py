import numpy as np
from django.core.exceptions import ValidationError

from network.types import Slfn
from numerics.types import as_matrix, frozen


def pre_activations(x, net: Slfn) -> np.ndarray:
    x = as_matrix(x, name="x")
    if x.shape[1] != net.input_dim:
        raise ValidationError(
            f"x has {x.shape[1]} columns, the network expects {net.input_dim} inputs.",
            code="shape_mismatch",
        )
    return x @ net.c[:-1] + net.c[-1]


def hidden_matrix(x, net: Slfn) -> np.ndarray:
    """H = phi(X C + b), one row per sample, one column per hidden unit."""
    return frozen(net.activation.apply(pre_activations(x, net)))


def forward(x, net: Slfn) -> np.ndarray:
    """Network outputs H W (linear output layer, no output bias)."""
    if not net.is_trained:
        raise ValidationError("network has no output weights; train it first.", code="missing_weights")
    return frozen(hidden_matrix(x, net) @ net.w)
