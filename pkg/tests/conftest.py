import os
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings as hypothesis_settings

from localbayes import load_manifest

hypothesis_settings.register_profile("suite", deadline=None)
hypothesis_settings.load_profile("suite")

REPO_ROOT = Path(__file__).resolve().parents[1]


def _write_sklearn_csv(path: Path, data, target, target_names):
    with open(path, "w", encoding="utf-8") as handle:
        for row, t in zip(data, target):
            cells = ",".join(repr(float(v)) for v in row)
            handle.write(f"{cells},{target_names[t]}\n")


@pytest.fixture(scope="session")
def iris_manifest(tmp_path_factory) -> Path:
    """Iris as a CSV plus manifest; the two petal attributes are preselected."""
    from sklearn.datasets import load_iris

    iris = load_iris()
    root = tmp_path_factory.mktemp("iris_data")
    _write_sklearn_csv(root / "iris.csv", iris.data, iris.target, iris.target_names)
    manifest = root / "iris.manifest"
    manifest.write_text(
        "name = iris\npath = iris.csv\nhas_header = false\nclass_column = 4\n"
        "feature_subset = 3,2\n",
        encoding="utf-8",
    )
    return manifest


@pytest.fixture(scope="session")
def wine_manifest(tmp_path_factory) -> Path:
    from sklearn.datasets import load_wine

    wine = load_wine()
    root = tmp_path_factory.mktemp("wine_data")
    _write_sklearn_csv(root / "wine.csv", wine.data, wine.target, wine.target_names)
    manifest = root / "wine.manifest"
    manifest.write_text(
        "name = wine\npath = wine.csv\nhas_header = false\nclass_column = 13\n"
        "feature_subset = 0,2,3,6,9,10,11,12\n",
        encoding="utf-8",
    )
    return manifest


@pytest.fixture(scope="session")
def blobs_manifest(tmp_path_factory) -> Path:
    """Two well-separated Gaussian blobs, 36 vs 24 rows, for fast CLI runs."""
    rng = np.random.default_rng(42)
    a = rng.normal((0.0, 0.0), 0.4, size=(36, 2))
    b = rng.normal((3.0, 3.0), 0.4, size=(24, 2))
    root = tmp_path_factory.mktemp("blob_data")
    with open(root / "blobs.csv", "w", encoding="utf-8") as handle:
        for row in a:
            handle.write(f"{row[0]!r},{row[1]!r},alpha\n")
        for row in b:
            handle.write(f"{row[0]!r},{row[1]!r},beta\n")
    manifest = root / "blobs.manifest"
    manifest.write_text(
        "name = blobs\npath = blobs.csv\nhas_header = false\nclass_column = 2\n",
        encoding="utf-8",
    )
    return manifest


def optional_uci_manifest(name: str):
    """Manifest for a dataset the user may have dropped in, else None.

    Looks beside datasets/<name>.manifest first, then under
    $LOCALBAYES_DATA_DIR for a file with the manifest's expected name.
    """
    manifest_path = REPO_ROOT / "datasets" / f"{name}.manifest"
    if not manifest_path.exists():
        return None
    manifest = load_manifest(manifest_path)
    if manifest.path.exists():
        return manifest
    env_dir = os.environ.get("LOCALBAYES_DATA_DIR")
    if env_dir:
        candidate = Path(env_dir) / manifest.path.name
        if candidate.exists():
            return replace(manifest, path=candidate)
    return None
