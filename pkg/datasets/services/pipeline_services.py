import logging
from pathlib import Path

import numpy as np
from django.core.exceptions import ValidationError

from datasets.services.loader_services import load_csv, load_schema, read_rows
from datasets.services.preprocessing_services import encode_targets, normalize
from datasets.services.split_services import DEFAULT_FRACTIONS, split
from datasets.types import Dataset, FeatureTransform, Split
from numerics.types import frozen

logger = logging.getLogger(__name__)


def load_dataset(data_path, schema_path) -> Dataset:
    return load_csv(data_path, load_schema(schema_path))


def prepare_dataset(d: Dataset, *, fractions=DEFAULT_FRACTIONS, seed: int = 0) -> tuple[Dataset, Split]:
    """
    Split the raw dataset, then scale features with training-part statistics
    and one-hot the targets. Returns the prepared dataset and its split.
    """
    parts = split(d, fractions, seed)
    prepared = encode_targets(normalize(d, train_indices=parts.train))
    logger.info(
        f"{d.name}: prepared N={prepared.size}, P={prepared.input_dim}, Q={prepared.output_dim}, "
        f"split {'/'.join(str(size) for size in parts.sizes)}"
    )
    return prepared, parts


def read_feature_rows(path, transform: FeatureTransform, *, delimiter: str = ",") -> np.ndarray:
    """
    Read raw feature rows (one column per schema feature, no target) and push
    them through a stored transform. ``delimiter`` is a single character or
    ``"whitespace"``. An optional header row naming the raw features is
    skipped. A file without rows gives an empty matrix.
    """
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"input file not found: {path}", code="missing_file")
    width = transform.input_width
    encoded = []
    for line_number, fields in read_rows(path, delimiter):
        if not encoded and [field.strip() for field in fields] == list(transform.raw_names):
            continue
        if len(fields) != width:
            raise ValidationError(
                f"{path.name} line {line_number}: expected P={width} feature columns "
                f"({', '.join(transform.raw_names)}), found {len(fields)}.",
                code="shape_mismatch",
            )
        encoded.append(transform.encode_row(fields, line_number))
    if not encoded:
        return frozen(np.zeros((0, len(transform.kept)), dtype=np.float64))
    return transform.scale(np.array(encoded, dtype=np.float64))
