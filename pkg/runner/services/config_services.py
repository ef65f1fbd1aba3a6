"""
Resolving a command's configuration.

Each key comes from the command-line flag, else the YAML file named by
``--config``, else ``settings.PINVNET`` (see ``config_get_value``). The merged
mapping is validated by the command's serializer. What comes out is plain
JSON data, so it can be hashed, written into output metadata and handed to a
Celery task unchanged.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Optional

import yaml
from django.core.exceptions import ValidationError

from datasets.serializers import flatten_errors
from experiments.types import MethodConfig, custom_method, method_from_label
from runner.selectors.config_selectors import config_get_value

logger = logging.getLogger(__name__)

# Config-file spellings of keys whose serializer field is named differently;
# applied only when the command has no field of the original name.
FILE_ALIASES = {"lambda": "lam", "method": "methods"}

# Keys that change where or how fast a run happens, not what it computes.
RUNTIME_KEYS = ("out", "workers", "xlsx")


def load_config_file(path) -> dict:
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"config file not found: {path}", code="missing_file")
    try:
        payload = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ValidationError(f"{path}: not valid YAML ({exc}).", code="parse_error")
    if payload is None:
        return {}
    if not isinstance(payload, dict):
        raise ValidationError(f"{path}: the config must be a mapping of keys to values.", code="parse_error")
    return payload


def _split_methods(value):
    """``--method`` may be repeated and each occurrence may hold a comma list."""
    if isinstance(value, str):
        value = [value]
    labels = []
    for item in value:
        if isinstance(item, str):
            labels.extend(part.strip() for part in item.split(",") if part.strip())
        else:
            labels.append(item)
    return labels


def resolve_config(serializer_class, flags: dict, *, config_path: Optional[str] = None) -> dict:
    keys = list(serializer_class().fields)
    file_config = {
        FILE_ALIASES[key] if key not in keys and FILE_ALIASES.get(key) in keys else key: value
        for key, value in load_config_file(config_path).items()
    }
    unknown = sorted(set(file_config) - set(keys))
    if unknown:
        raise ValidationError(f"{config_path}: unknown keys {', '.join(unknown)}.", code="invalid_config")

    raw = {}
    for key in keys:
        value = config_get_value(key, flags=flags, file_config=file_config)
        if value is not None:
            raw[key] = value
    if "methods" in raw and "methods" in keys:
        raw["methods"] = _split_methods(raw["methods"])
    if "method" in raw and isinstance(raw["method"], list):
        if len(raw["method"]) != 1:
            raise ValidationError("method: this command trains exactly one method.", code="invalid_config")
        raw["method"] = raw["method"][0]

    serializer = serializer_class(data=raw)
    if not serializer.is_valid():
        raise ValidationError("; ".join(flatten_errors(serializer.errors)), code="invalid_config")
    # Round trip through JSON to drop serializer containers.
    return json.loads(json.dumps(serializer.validated_data))


def config_hash(config: dict) -> str:
    relevant = {key: value for key, value in config.items() if key not in RUNTIME_KEYS}
    return hashlib.sha256(json.dumps(relevant, sort_keys=True).encode("utf-8")).hexdigest()


def build_method(entry, lam: Optional[float] = None) -> MethodConfig:
    if isinstance(entry, str):
        cfg = method_from_label(entry)
    else:
        cfg = custom_method(**entry)
    if lam is not None and cfg.regularized:
        cfg = cfg.with_lambda(lam)
    return cfg


def build_methods(config: dict) -> list[MethodConfig]:
    """Method configs in request order; a regularized method without a fixed lambda is left for tuning."""
    methods = []
    for entry in config["methods"]:
        label = entry if isinstance(entry, str) else entry["label"]
        methods.append(build_method(entry, config.get("lambdas", {}).get(label, config.get("lam"))))
    return methods
