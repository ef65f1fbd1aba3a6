"""
Constructed datasets with a known singular-value structure.

consistent
    Inputs in {-1, 1}^P and targets T = H w* for a hidden layer drawn with a
    known (method, m, seed). Range scaling leaves such inputs unchanged, so a
    network rebuilt with the same triple reproduces H and recovers w*.
collinear
    A few smooth input features, optionally with near-identical copies, and a
    weak sine target under strong label noise. Hidden columns over so few
    inputs become nearly dependent well before m reaches the training size,
    so the crossing comes early. With the default 60 training rows, least
    squares on the barely resolved directions just below the crossing fits
    the noise and the unregularized test error peaks there.
duplicated
    k distinct input points repeated many times: H has rank min(m, k), so the
    crossing happens exactly at m = k + 1.
wide
    Many independent features and a linear target; H stays well conditioned
    for hidden sizes below the feature count.
"""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import yaml
from django.core.exceptions import ValidationError

from datasets.types import Dataset, TaskKind
from network.selectors.network_selectors import hidden_matrix
from network.services.network_services import build_network, make_rng
from network.types import ActivationKind, InitRegime
from numerics.types import frozen

logger = logging.getLogger(__name__)

KINDS = ("consistent", "collinear", "duplicated", "wide")


def _regression(name: str, x: np.ndarray, t: np.ndarray) -> Dataset:
    return Dataset(
        name=name,
        x=frozen(np.asarray(x, dtype=np.float64)),
        t=frozen(np.asarray(t, dtype=np.float64).reshape(-1, 1)),
        task=TaskKind.regression(),
        feature_names=tuple(f"x{j}" for j in range(x.shape[1])),
    )


def make_consistent(
    *,
    n: int = 200,
    p: int = 6,
    m: int = 20,
    seed: int = 0,
    activation: ActivationKind = ActivationKind.TANH,
    init: InitRegime = InitRegime.scaled(),
) -> Dataset:
    rng = make_rng(seed)
    x = rng.choice(np.array([-1.0, 1.0]), size=(n, p))
    net = build_network(input_dim=p, hidden_dim=m, output_dim=1, activation=activation, init=init, seed=seed)
    w_star = rng.standard_normal((m, 1))
    return _regression("consistent", x, hidden_matrix(x, net) @ w_star)


def make_collinear(
    *,
    n: int = 120,
    p: int = 2,
    copies: int = 0,
    signal: float = 0.25,
    noise: float = 0.3,
    seed: int = 0,
) -> Dataset:
    if n < 1 or p < 1 or copies < 0:
        raise ValidationError("collinear dataset needs n >= 1, p >= 1 and copies >= 0.", code="invalid")
    rng = make_rng(seed)
    base = rng.uniform(-1.0, 1.0, size=(n, p))
    near_copies = [base + 1e-3 * rng.standard_normal((n, p)) for _ in range(copies)]
    x = np.hstack([base, *near_copies])
    t = signal * np.sin(np.pi * base.mean(axis=1, keepdims=True)) + noise * rng.standard_normal((n, 1))
    return _regression("collinear", x, t)


def make_duplicated(*, k: int = 6, p: int = 4, repeats: int = 25, noise: float = 0.0, seed: int = 0) -> Dataset:
    if k < 1 or repeats < 1:
        raise ValidationError("duplicated dataset needs k >= 1 and repeats >= 1.", code="invalid")
    rng = make_rng(seed)
    points = rng.uniform(-1.0, 1.0, size=(k, p))
    values = rng.standard_normal((k, 1))
    order = np.tile(np.arange(k), repeats)
    t = values[order] + noise * rng.standard_normal((order.size, 1))
    return _regression("duplicated", points[order], t)


def make_wide(*, n: int = 200, p: int = 40, noise: float = 0.1, seed: int = 0) -> Dataset:
    rng = make_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(n, p))
    beta = rng.standard_normal((p, 1)) / np.sqrt(p)
    return _regression("wide", x, x @ beta + noise * rng.standard_normal((n, 1)))


def make_synthetic(kind: str, **options) -> Dataset:
    builders = {
        "consistent": make_consistent,
        "collinear": make_collinear,
        "duplicated": make_duplicated,
        "wide": make_wide,
    }
    if kind not in builders:
        raise ValidationError(f"unknown synthetic dataset '{kind}' (choose from {', '.join(KINDS)}).", code="invalid")
    return builders[kind](**options)


def write_dataset(d: Dataset, directory, *, stem: str | None = None) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` (features then target) and a matching ``<stem>.yaml`` schema."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = stem or d.name
    data_path = directory / f"{stem}.csv"
    schema_path = directory / f"{stem}.yaml"

    with data_path.open("w", encoding="utf-8", newline="") as handle:
        for features, target in zip(d.x, d.t[:, 0]):
            handle.write(",".join(repr(float(v)) for v in features) + f",{float(target)!r}\n")

    schema = {
        "name": stem,
        "task": d.task.kind,
        "delimiter": ",",
        "columns": [{"name": name, "role": "feature"} for name in d.feature_names]
        + [{"name": "target", "role": "target"}],
    }
    schema_path.write_text(yaml.safe_dump(schema, sort_keys=False), encoding="utf-8")
    logger.info(f"wrote {d.size} rows to {data_path} with schema {schema_path}")
    return data_path, schema_path
