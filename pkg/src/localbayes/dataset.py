"""CSV loading, categorical encoding, fold construction and dataset manifests.

Encoding is deterministic: category strings and class names are mapped to
integer codes in lexicographic order, so the same file always yields the same
arrays regardless of row order or platform.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

__all__ = [
    "DatasetError",
    "MalformedRowError",
    "EmptyDatasetError",
    "RawTable",
    "Dataset",
    "FoldPlan",
    "DatasetManifest",
    "DEFAULT_MISSING_MARKERS",
    "CURATED_SUBSETS",
    "load_csv",
    "encode",
    "select_features",
    "make_folds",
    "load_manifest",
    "load_dataset",
    "bundled_example_path",
]

DEFAULT_MISSING_MARKERS = frozenset({"?", ""})


class DatasetError(Exception):
    """Raised for unusable input files or invalid dataset operations."""


class MalformedRowError(DatasetError):
    """A data row whose cell count differs from the rest of the file."""


class EmptyDatasetError(DatasetError):
    """No data rows survive loading and missing-value filtering."""


@dataclass(frozen=True)
class RawTable:
    """Cell strings as read from disk, before any encoding."""

    rows: list[list[str]]
    column_count: int
    class_column: int
    header: list[str] | None = None


@dataclass(frozen=True)
class Dataset:
    """Encoded data: real-valued attribute matrix X and integer class ids y.

    ``encoders`` holds, per attribute, the category-string to code mapping
    (empty for columns parsed as numeric). Arrays are frozen after
    construction; downstream code must copy before mutating.
    """

    X: np.ndarray
    y: np.ndarray
    class_names: list[str]
    encoders: list[dict[str, int]]
    feature_names: list[str]

    def __post_init__(self):
        self.X.setflags(write=False)
        self.y.setflags(write=False)

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class FoldPlan:
    """Assignment of every sample to exactly one fold id in [0, folds)."""

    fold_assignments: np.ndarray
    folds: int
    seed: int
    stratified: bool

    def __post_init__(self):
        self.fold_assignments.setflags(write=False)

    def test_mask(self, fold: int) -> np.ndarray:
        return self.fold_assignments == fold


def load_csv(
    path,
    *,
    has_header: bool = False,
    class_column: int | None = None,
    missing_markers=DEFAULT_MISSING_MARKERS,
    delimiter: str = ",",
) -> RawTable:
    """Read a delimited text file into a RawTable.

    Rows containing any cell found in ``missing_markers`` (after stripping
    surrounding whitespace) are dropped. A row whose cell count disagrees with
    the first data row raises MalformedRowError naming the offending line.
    ``delimiter`` may be the special value "whitespace" to split rows on any
    run of blanks, which several published data files use.
    """
    markers = frozenset(missing_markers)
    path = Path(path)
    header: list[str] | None = None
    rows: list[list[str]] = []
    column_count: int | None = None

    with open(path, newline="", encoding="utf-8") as handle:
        if delimiter == "whitespace":
            reader = (line.split() for line in handle)
        else:
            reader = csv.reader(handle, delimiter=delimiter)
        for line_no, cells in enumerate(reader, start=1):
            cells = [c.strip() for c in cells]
            if not cells or all(c == "" for c in cells):
                continue  # blank or separator line
            if has_header and header is None:
                header = cells
                column_count = len(cells)
                continue
            if column_count is None:
                column_count = len(cells)
            elif len(cells) != column_count:
                raise MalformedRowError(
                    f"{path.name}:{line_no}: expected {column_count} cells, got {len(cells)}"
                )
            if any(c in markers for c in cells):
                continue
            rows.append(cells)

    if column_count is None or not rows:
        raise EmptyDatasetError(f"{path.name}: no usable data rows")
    if class_column is None:
        class_column = column_count - 1
    if not (0 <= class_column < column_count):
        raise DatasetError(
            f"class column {class_column} out of range for {column_count} columns"
        )
    return RawTable(rows=rows, column_count=column_count, class_column=class_column, header=header)


def _parse_finite_float(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if np.isfinite(value) else None


def encode(raw: RawTable) -> Dataset:
    """Turn a RawTable into numeric arrays.

    A column is numeric when every cell parses to a finite float; otherwise it
    is categorical and its distinct strings get codes 0..V-1 in lexicographic
    order. The class column is always mapped through lexicographically sorted
    class names.
    """
    feature_cols = [j for j in range(raw.column_count) if j != raw.class_column]
    if not feature_cols:
        raise DatasetError("dataset needs at least one attribute column")

    m = len(raw.rows)
    X = np.empty((m, len(feature_cols)), dtype=np.float64)
    encoders: list[dict[str, int]] = []
    feature_names: list[str] = []

    for out_j, j in enumerate(feature_cols):
        cells = [row[j] for row in raw.rows]
        parsed = [_parse_finite_float(c) for c in cells]
        if all(v is not None for v in parsed):
            X[:, out_j] = parsed
            encoders.append({})
        else:
            mapping = {c: code for code, c in enumerate(sorted(set(cells)))}
            X[:, out_j] = [mapping[c] for c in cells]
            encoders.append(mapping)
        if raw.header is not None:
            feature_names.append(raw.header[j])
        else:
            feature_names.append(f"attr{j}")

    class_cells = [row[raw.class_column] for row in raw.rows]
    class_names = sorted(set(class_cells))
    class_ids = {name: i for i, name in enumerate(class_names)}
    y = np.array([class_ids[c] for c in class_cells], dtype=np.int64)

    return Dataset(X=X, y=y, class_names=class_names, encoders=encoders, feature_names=feature_names)


def select_features(ds: Dataset, indices) -> Dataset:
    """Dataset restricted to the given attribute indices, in the given order."""
    indices = list(indices)
    if not indices:
        raise DatasetError("feature subset must not be empty")
    if len(set(indices)) != len(indices):
        raise DatasetError("feature subset indices must be distinct")
    for i in indices:
        if not (0 <= i < ds.n_features):
            raise DatasetError(f"feature index {i} out of range for {ds.n_features} attributes")
    return Dataset(
        X=ds.X[:, indices].copy(),
        y=ds.y.copy(),
        class_names=list(ds.class_names),
        encoders=[dict(ds.encoders[i]) for i in indices],
        feature_names=[ds.feature_names[i] for i in indices],
    )


def make_folds(y, folds: int, seed: int, stratified: bool = False) -> FoldPlan:
    """Deterministic shuffled partition of sample indices into folds.

    Stratified mode deals each class's shuffled members round-robin across
    folds, continuing from where the previous class stopped, so fold sizes
    within each class stratum differ by at most one and every fold id is used.
    A class with fewer members than folds simply spans fewer folds.
    """
    y = np.asarray(y)
    m = y.shape[0]
    if folds < 2:
        raise DatasetError("need at least 2 folds")
    if m < folds:
        raise DatasetError(f"cannot split {m} samples into {folds} folds")

    rng = np.random.default_rng(seed)
    assignments = np.empty(m, dtype=np.int64)
    if stratified:
        offset = 0
        for c in np.unique(y):
            members = rng.permutation(np.flatnonzero(y == c))
            for j, idx in enumerate(members):
                assignments[idx] = (offset + j) % folds
            offset = (offset + len(members)) % folds
    else:
        order = rng.permutation(m)
        assignments[order] = np.arange(m) % folds
    return FoldPlan(fold_assignments=assignments, folds=folds, seed=seed, stratified=stratified)


@dataclass(frozen=True)
class DatasetManifest:
    """Where to find a dataset file and how to read it."""

    name: str
    path: Path
    class_column: int | None = None
    has_header: bool = False
    missing_markers: frozenset = DEFAULT_MISSING_MARKERS
    feature_subset: tuple[int, ...] | None = None
    delimiter: str = ","


_MANIFEST_KEYS = {
    "name",
    "path",
    "class_column",
    "has_header",
    "missing_markers",
    "feature_subset",
    "delimiter",
}

_TRUE = {"true", "1", "yes"}
_FALSE = {"false", "0", "no"}


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise DatasetError(f"manifest key {key!r}: expected a boolean, got {value!r}")


def load_manifest(path) -> DatasetManifest:
    """Parse a key=value manifest file describing one dataset.

    Recognized keys: name, path, class_column, has_header, missing_markers
    (comma separated, an empty token means the empty string), feature_subset
    (comma separated attribute indices), delimiter. Lines starting with '#'
    are comments. ``path`` is resolved relative to the manifest file.
    """
    path = Path(path)
    values: dict[str, str] = {}
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DatasetError(f"{path.name}:{line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _MANIFEST_KEYS:
            raise DatasetError(f"{path.name}:{line_no}: unknown manifest key {key!r}")
        values[key] = value.strip()

    if "path" not in values:
        raise DatasetError(f"{path.name}: manifest is missing the required 'path' key")

    markers = DEFAULT_MISSING_MARKERS
    if "missing_markers" in values:
        markers = frozenset(tok.strip() for tok in values["missing_markers"].split(","))
    subset = None
    if "feature_subset" in values and values["feature_subset"]:
        try:
            subset = tuple(int(tok) for tok in values["feature_subset"].split(","))
        except ValueError as exc:
            raise DatasetError(f"{path.name}: bad feature_subset: {exc}") from exc
    class_column = None
    if "class_column" in values and values["class_column"]:
        try:
            class_column = int(values["class_column"])
        except ValueError as exc:
            raise DatasetError(f"{path.name}: bad class_column: {exc}") from exc

    return DatasetManifest(
        name=values.get("name", path.stem),
        path=(path.parent / values["path"]).resolve(),
        class_column=class_column,
        has_header=_parse_bool("has_header", values["has_header"]) if "has_header" in values else False,
        missing_markers=markers,
        feature_subset=subset,
        delimiter=values.get("delimiter", ","),
    )


def load_dataset(manifest: DatasetManifest, feature_subset=None) -> Dataset:
    """Load, encode and (when configured) column-restrict a manifest's dataset.

    ``feature_subset`` overrides the manifest's own subset when given.
    """
    raw = load_csv(
        manifest.path,
        has_header=manifest.has_header,
        class_column=manifest.class_column,
        missing_markers=manifest.missing_markers,
        delimiter=manifest.delimiter,
    )
    ds = encode(raw)
    subset = feature_subset if feature_subset is not None else manifest.feature_subset
    if subset is not None:
        ds = select_features(ds, subset)
    return ds


# Attribute subsets tuned for the Gaussian baseline on each benchmark dataset,
# reused across all classifiers. Indices count attribute columns only, in the
# file layouts documented in datasets/README.md; where the standard file keeps
# an id column (glass, breast_tissue, yeast) the indices already skip past it.
CURATED_SUBSETS: dict[str, tuple[int, ...] | None] = {
    "iris": (3, 2),
    "breast_tissue": (1, 9, 7, 4, 8, 5, 6, 2),
    "algerian_forest_fires": (8, 5, 10, 6),
    "credit_approval": (10, 8, 14, 7, 9, 3, 4, 12, 5, 0, 11, 2, 13, 1),
    "wine": (0, 2, 3, 6, 9, 10, 11, 12),
    "breast_cancer": (3, 4, 5, 8, 2, 6),
    "wine_quality_red": (10, 1, 6, 9, 4, 0, 7),
    "tic_tac_toe": (0, 1, 2, 3, 4, 5, 6, 7, 8),
    "australian": (9, 7, 13, 8, 6, 4, 5, 3, 11, 2, 12),
    "yeast": (4, 2, 3, 9, 5, 7, 1),
    "raisin": (1, 0, 4, 6, 2, 5),
    "glass": (8, 6, 4, 7),
    "leaf": (1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14),
    "wine_quality_white": (10, 1, 4, 6, 2, 9, 8, 0),
    "banknote": (0, 1),
    "dry_bean": None,  # all attributes
    "abalone": (5, 3, 4, 6, 7, 2),
}


def bundled_example_path() -> Path:
    """Path of the packaged two-class, one-attribute demonstration file."""
    return Path(resources.files("localbayes").joinpath("data", "toy.csv"))
