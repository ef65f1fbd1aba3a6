import csv
import logging
from pathlib import Path

import numpy as np
import yaml
from django.core.exceptions import ValidationError

from datasets.serializers import SchemaSerializer, flatten_errors
from datasets.types import (
    CLASSIFICATION,
    Dataset,
    DatasetSchema,
    FeatureTransform,
    TaskKind,
)
from numerics.types import frozen

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def load_schema(path) -> DatasetSchema:
    """Read and validate a YAML dataset schema."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"schema file not found: {path}", code="missing_file")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ValidationError(f"{path}: invalid YAML ({exc})", code="schema_error")
    serializer = SchemaSerializer(data=data or {})
    if not serializer.is_valid():
        raise ValidationError(
            f"{path}: " + "; ".join(flatten_errors(serializer.errors)),
            code="schema_error",
        )
    return serializer.save()


def read_rows(path: Path, delimiter: str):
    """Yield (line_number, fields) for every non-blank data line."""
    with path.open(newline="", encoding="utf-8") as handle:
        if delimiter == "whitespace":
            for line_number, line in enumerate(handle, start=1):
                fields = line.split()
                if fields:
                    yield line_number, fields
            return
        reader = csv.reader(handle, delimiter=delimiter, skipinitialspace=True)
        for fields in reader:
            if fields and any(field.strip() for field in fields):
                yield reader.line_num, fields


def load_csv(path, schema: DatasetSchema) -> Dataset:
    """
    Parse a UCI-style delimited file according to ``schema``.

    Categorical features are mapped to numbers here; range scaling is left to
    ``normalize``. Rows with missing entries are dropped and counted.
    """
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"dataset file not found: {path}", code="missing_file")

    columns = list(schema.columns)
    feature_positions = [index for index, column in enumerate(columns) if column.role == "feature"]
    target_position = next(index for index, column in enumerate(columns) if column.role == "target")
    transform = FeatureTransform(
        raw_names=tuple(columns[index].name for index in feature_positions),
        categories={column.name: column.categories for column in columns if column.type == "categorical"},
        encoding=schema.categorical_encoding,
    )
    is_classification = schema.task == CLASSIFICATION
    label_index = {label: index for index, label in enumerate(schema.class_labels)}

    features, targets = [], []
    dropped = 0
    header_pending = schema.header
    for line_number, fields in read_rows(path, schema.delimiter):
        if header_pending:
            header_pending = False
            continue
        if len(fields) != len(columns):
            raise ValidationError(
                f"{path.name} line {line_number}: expected {len(columns)} columns, found {len(fields)}.",
                code="parse_error",
            )
        used = [fields[index].strip() for index in feature_positions + [target_position]]
        if any(value in schema.missing for value in used):
            dropped += 1
            continue
        features.append(transform.encode_row([fields[index] for index in feature_positions], line_number))
        raw_target = fields[target_position].strip()
        if is_classification:
            if raw_target not in label_index:
                raise ValidationError(
                    f"{path.name} line {line_number}: class label '{raw_target}' is not declared in the schema.",
                    code="parse_error",
                )
            targets.append(label_index[raw_target])
        else:
            try:
                targets.append(float(raw_target))
            except ValueError:
                raise ValidationError(
                    f"{path.name} line {line_number}: target '{raw_target}' is not numeric.",
                    code="parse_error",
                )

    if dropped:
        logger.warning(f"{path.name}: dropped {dropped} rows with missing values")
    if not features:
        raise ValidationError(f"{path.name}: no data rows.", code="parse_error")

    x = frozen(np.array(features, dtype=np.float64))
    if is_classification:
        labels = frozen(np.array(targets, dtype=np.intp))
        task = TaskKind.classification(len(schema.class_labels))
        t = frozen(labels.astype(np.float64).reshape(-1, 1))
    else:
        labels = None
        task = TaskKind.regression()
        t = frozen(np.array(targets, dtype=np.float64).reshape(-1, 1))
    logger.info(f"loaded {schema.name}: N={x.shape[0]}, P={x.shape[1]}, task={task.kind}")
    return Dataset(
        name=schema.name,
        x=x,
        t=t,
        task=task,
        feature_names=tuple(transform.encoded_names()),
        class_labels=tuple(schema.class_labels),
        labels=labels,
        transform=transform,
    )
