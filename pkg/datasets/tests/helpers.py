import tempfile
from pathlib import Path

import numpy as np
from django.conf import settings

from datasets.types import Dataset, TaskKind

DATA_DIR = Path(settings.PINVNET["DATA_DIR"])


def has_data(filename: str) -> bool:
    return (DATA_DIR / filename).is_file()


class TempFiles:
    """Scratch directory for test files, removed by ``cleanup``."""

    def __init__(self):
        self._dir = tempfile.TemporaryDirectory()
        self.root = Path(self._dir.name)

    def write(self, name: str, text: str) -> Path:
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        return path

    def cleanup(self):
        self._dir.cleanup()


def labelled_dataset(labels, *, num_classes=None, p=2, seed=0) -> Dataset:
    labels = np.asarray(labels, dtype=np.intp)
    num_classes = num_classes or int(labels.max()) + 1
    rng = np.random.default_rng(seed)
    return Dataset(
        name="labelled",
        x=rng.uniform(-5.0, 5.0, size=(labels.size, p)),
        t=labels.astype(np.float64).reshape(-1, 1),
        task=TaskKind.classification(num_classes),
        feature_names=tuple(f"f{j}" for j in range(p)),
        class_labels=tuple(str(c) for c in range(num_classes)),
        labels=labels,
    )


def regression_dataset(x, t=None) -> Dataset:
    x = np.asarray(x, dtype=np.float64)
    t = np.zeros((x.shape[0], 1)) if t is None else np.asarray(t, dtype=np.float64).reshape(-1, 1)
    return Dataset(
        name="regression",
        x=x,
        t=t,
        task=TaskKind.regression(),
        feature_names=tuple(f"f{j}" for j in range(x.shape[1])),
    )
