"""
Model files.

A model file is a JSON object with sorted keys and no timestamps, so the same
training run always produces the same bytes. Floats are written in Python's
shortest round-trip form, which makes save -> load lossless. The layout is
described in MODEL_FILE_FORMAT.md at the project root.
"""
import json
import logging
from pathlib import Path

import numpy as np
from django.core.exceptions import ValidationError

from datasets.serializers import flatten_errors
from datasets.types import FeatureTransform, TaskKind
from network.serializers import MODEL_FORMAT, MODEL_FORMAT_VERSION, ModelFileInputSerializer
from network.types import RNG_ALGORITHM, ActivationKind, InitRegime, Slfn, StoredModel
from numerics.types import frozen

logger = logging.getLogger(__name__)


def model_to_dict(model: StoredModel) -> dict:
    net = model.net
    if not net.is_trained:
        raise ValidationError("only trained networks can be saved.", code="missing_weights")
    return {
        "format": MODEL_FORMAT,
        "format_version": MODEL_FORMAT_VERSION,
        "activation": net.activation.value,
        "init": net.init.as_dict(),
        "method": model.method,
        "regularization_lambda": None if model.lam is None else float(model.lam),
        "seed": int(net.seed),
        "rng": RNG_ALGORITHM,
        "input_dim": net.input_dim,
        "hidden_dim": net.hidden_dim,
        "output_dim": net.output_dim,
        "task": {"kind": model.task.kind, "num_classes": model.task.num_classes},
        "class_labels": list(model.class_labels),
        "preprocessing": model.transform.as_dict() if model.transform else None,
        "metrics": {key: float(value) for key, value in sorted(model.metrics.items())},
        "c": net.c.tolist(),
        "w": net.w.tolist(),
    }


def save_model(model: StoredModel, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model_to_dict(model), sort_keys=True, indent=1) + "\n", encoding="utf-8")
    logger.info(f"saved {model.method} model (M={model.net.hidden_dim}) to {path}")
    return path


def load_model(path) -> StoredModel:
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"model file not found: {path}", code="missing_file")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not a JSON model file ({exc}).", code="invalid_model")

    serializer = ModelFileInputSerializer(data=payload)
    if not serializer.is_valid():
        raise ValidationError(f"{path}: " + "; ".join(flatten_errors(serializer.errors)), code="invalid_model")
    data = serializer.validated_data

    net = Slfn(
        c=frozen(np.array(data["c"], dtype=np.float64)),
        output_dim=data["output_dim"],
        activation=ActivationKind(data["activation"]),
        init=InitRegime(kind=data["init"]["kind"], half_width=data["init"]["half_width"]),
        seed=data["seed"],
        w=frozen(np.array(data["w"], dtype=np.float64)),
    )
    task = data["task"]
    return StoredModel(
        net=net,
        method=data["method"],
        lam=data["regularization_lambda"],
        task=TaskKind(kind=task["kind"], num_classes=task["num_classes"]),
        class_labels=tuple(data["class_labels"]),
        transform=FeatureTransform.from_dict(data["preprocessing"]) if data["preprocessing"] else None,
        metrics=dict(data["metrics"]),
    )
