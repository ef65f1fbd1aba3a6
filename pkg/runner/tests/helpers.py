import csv
from io import StringIO
from pathlib import Path

from django.core.management import call_command

from runner.services.export_service import strip_metadata


def read_rows(path) -> list[dict]:
    """Data rows of a result CSV, keyed by header."""
    return list(csv.DictReader(strip_metadata(path)))


def make_dataset(kind: str, directory, **options) -> tuple[Path, Path]:
    """Write a synthetic dataset with make_synthetic; returns (data, schema) paths."""
    call_command("make_synthetic", kind, out=str(directory), stdout=StringIO(), **options)
    return Path(directory) / f"{kind}.csv", Path(directory) / f"{kind}.yaml"


def sweep_options(data_path, schema_path, out, **overrides) -> dict:
    options = {
        "dataset": str(data_path),
        "schema": str(schema_path),
        "methods": ["HypT-unreg"],
        "m_range": "1:8",
        "trials": 3,
        "lambda_grid": "1e-12,1e-9,1e-6,1e-3",
        "seed": 0,
        "out": str(out),
        "workers": 1,
        "timing": False,
        "stdout": StringIO(),
    }
    options.update(overrides)
    return options

