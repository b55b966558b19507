"""Resampled k-fold cross-validation, hyperparameter sweeps and comparisons.

Fold plans depend only on (labels, fold count, seed, stratified), so every
grid point of a sweep sees identical train/test splits and two runs with the
same ExperimentConfig produce bit-identical accuracies, with or without
worker threads.
"""

from __future__ import annotations

import hashlib
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import classifiers
from .classifiers import ClassifierSpec
from .dataset import Dataset, FoldPlan, make_folds, select_features

__all__ = [
    "LeakageError",
    "ExperimentConfig",
    "SweepResult",
    "ClassifierResult",
    "EvalReport",
    "resample_fold_plans",
    "cross_validate",
    "sweep",
    "compare",
    "evaluate_specs",
]

logger = logging.getLogger(__name__)

DEFAULT_KAPPA_GRID = tuple(float(v) for v in range(0, 100, 5))
DEFAULT_K_GRID = tuple(range(1, 32, 2))


class LeakageError(RuntimeError):
    """A model mutated the training arrays it was fitted on."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Protocol knobs shared by all evaluation entry points.

    ``stratified`` defaults to false: folds are plain shuffled partitions, so
    training class proportions fluctuate fold to fold exactly as they would
    under repeated random splitting.
    """

    folds: int = 10
    resamples: int = 10
    base_seed: int = 0
    specs: tuple[ClassifierSpec, ...] = ()
    feature_subset: tuple[int, ...] | None = None
    kappa_grid: tuple[float, ...] = DEFAULT_KAPPA_GRID
    k_grid: tuple[int, ...] = DEFAULT_K_GRID
    stratified: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.resamples < 1:
            raise ValueError("resamples must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class SweepResult:
    """Accuracy curve over one hyperparameter grid."""

    kind: str
    values: tuple
    mean_accuracies: tuple[float, ...]
    per_resample: tuple[tuple[float, ...], ...]
    seconds: tuple[float, ...]
    best_value: float
    best_accuracy: float


@dataclass(frozen=True)
class ClassifierResult:
    label: str
    kind: str
    hyperparameter: float | None
    mean_accuracy: float
    std: float
    per_resample: tuple[float, ...]
    wall_time_s: float


@dataclass(frozen=True)
class EvalReport:
    dataset_name: str
    rows: tuple[ClassifierResult, ...]
    sweep_curves: dict = field(default_factory=dict)


def resample_fold_plans(y, cfg: ExperimentConfig) -> list[FoldPlan]:
    """The fold plan of every resample; resample t uses seed base_seed + t."""
    return [
        make_folds(y, cfg.folds, cfg.base_seed + t, stratified=cfg.stratified)
        for t in range(cfg.resamples)
    ]


def _training_digest(X_tr: np.ndarray, y_tr: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(X_tr).tobytes())
    h.update(np.ascontiguousarray(y_tr).tobytes())
    return h.hexdigest()


def _evaluate_resample(ds: Dataset, spec, plan: FoldPlan, model_factory) -> tuple[float, float]:
    """(accuracy, fit+predict seconds) for one full pass over the folds.

    Accuracy is sample weighted: total correct over total predicted, every
    sample appearing in exactly one test fold.
    """
    n_classes = len(np.unique(ds.y))
    correct = 0
    seconds = 0.0
    for f in range(plan.folds):
        test_mask = plan.test_mask(f)
        X_tr, y_tr = ds.X[~test_mask], ds.y[~test_mask]
        X_te, y_te = ds.X[test_mask], ds.y[test_mask]
        if len(np.unique(y_tr)) < n_classes:
            logger.warning(
                "fold %d (seed %d) lost a class from its training partition", f, plan.seed
            )
        before = _training_digest(X_tr, y_tr)
        start = time.perf_counter()
        model = model_factory(spec, X_tr, y_tr)
        predictions = model.predict(X_te)
        seconds += time.perf_counter() - start
        if _training_digest(X_tr, y_tr) != before:
            raise LeakageError("training arrays changed during fit/predict")
        correct += int((predictions == y_te).sum())
    return correct / ds.n_samples, seconds


def _apply_subset(ds: Dataset, cfg: ExperimentConfig) -> Dataset:
    if cfg.feature_subset is None:
        return ds
    return select_features(ds, cfg.feature_subset)


def _cv_timed(ds: Dataset, spec, cfg: ExperimentConfig, model_factory) -> tuple[list[float], float]:
    if ds.n_samples < 1:
        raise ValueError("dataset is empty")
    plans = resample_fold_plans(ds.y, cfg)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(
                pool.map(lambda plan: _evaluate_resample(ds, spec, plan, model_factory), plans)
            )
    else:
        results = [_evaluate_resample(ds, spec, plan, model_factory) for plan in plans]
    accuracies = [acc for acc, _ in results]
    seconds = sum(sec for _, sec in results)
    return accuracies, seconds


def cross_validate(ds: Dataset, spec: ClassifierSpec, cfg: ExperimentConfig, *, model_factory=None) -> list[float]:
    """Per-resample accuracies of one classifier under cfg's protocol.

    ``model_factory`` defaults to classifiers.fit; tests may substitute stubs
    with the same (spec, X, y) -> model signature.
    """
    ds = _apply_subset(ds, cfg)
    factory = model_factory if model_factory is not None else classifiers.fit
    accuracies, _ = _cv_timed(ds, spec, cfg, factory)
    return accuracies


def _base_spec(kind: str, cfg: ExperimentConfig) -> ClassifierSpec:
    for spec in cfg.specs:
        if spec.kind == kind:
            return spec
    return ClassifierSpec(kind=kind)


def _grid_spec(base: ClassifierSpec, value):
    if base.kind == "kappa_bayes":
        return base.with_kappa(value)
    return base.with_k(value)


def _max_training_size(ds: Dataset, cfg: ExperimentConfig) -> int:
    largest_fold = -(-ds.n_samples // cfg.folds)  # ceil
    return ds.n_samples - largest_fold


def sweep(ds: Dataset, kind: str, grid, cfg: ExperimentConfig) -> SweepResult:
    """Cross-validate one classifier at every grid value, on shared folds.

    Only the swept hyperparameter varies between grid points. Ties for the
    best value go to the smaller hyperparameter value. knn grid points larger
    than the smallest training partition are dropped with a warning.
    """
    if kind not in ("kappa_bayes", "knn"):
        raise ValueError("sweeps support kappa_bayes and knn only")
    values = sorted(set(grid))
    if not values:
        raise ValueError("sweep grid must not be empty")
    ds = _apply_subset(ds, cfg)
    if kind == "knn":
        limit = _max_training_size(ds, cfg)
        kept = [v for v in values if v <= limit]
        if len(kept) < len(values):
            logger.warning(
                "dropping k values above the %d-sample training partitions", limit
            )
        values = kept
        if not values:
            raise ValueError("every k in the grid exceeds the training partition size")

    base = _base_spec(kind, cfg)
    inner_cfg = _without_subset(cfg)
    mean_accuracies: list[float] = []
    per_resample: list[tuple[float, ...]] = []
    seconds: list[float] = []
    for value in values:
        accs, secs = _cv_timed(ds, _grid_spec(base, value), inner_cfg, classifiers.fit)
        mean_accuracies.append(float(np.mean(accs)))
        per_resample.append(tuple(accs))
        seconds.append(secs)

    best_idx = 0
    for i in range(1, len(values)):
        if mean_accuracies[i] > mean_accuracies[best_idx]:
            best_idx = i
    return SweepResult(
        kind=kind,
        values=tuple(values),
        mean_accuracies=tuple(mean_accuracies),
        per_resample=tuple(per_resample),
        seconds=tuple(seconds),
        best_value=values[best_idx],
        best_accuracy=mean_accuracies[best_idx],
    )


def _without_subset(cfg: ExperimentConfig) -> ExperimentConfig:
    return cfg if cfg.feature_subset is None else replace(cfg, feature_subset=None)


def _format_value(value) -> str:
    return f"{value:g}"


def _result_from(label, kind, value, accs, secs) -> ClassifierResult:
    accs = tuple(float(a) for a in accs)
    return ClassifierResult(
        label=label,
        kind=kind,
        hyperparameter=None if value is None else float(value),
        mean_accuracy=float(np.mean(accs)),
        std=float(np.std(accs)),
        per_resample=accs,
        wall_time_s=float(secs),
    )


def _fixed_label(spec: ClassifierSpec) -> tuple[str, float | None]:
    if spec.kind == "kappa_bayes":
        return f"kappa_bayes (kappa={spec.kappa:g})", spec.kappa
    if spec.kind == "knn":
        return f"knn (k={spec.k_neighbors})", spec.k_neighbors
    return spec.kind, None


def evaluate_specs(ds: Dataset, cfg: ExperimentConfig, dataset_name: str = "dataset") -> EvalReport:
    """One cross-validation row per spec at its fixed hyperparameters."""
    ds = _apply_subset(ds, cfg)
    inner_cfg = _without_subset(cfg)
    rows = []
    for spec in cfg.specs:
        accs, secs = _cv_timed(ds, spec, inner_cfg, classifiers.fit)
        label, hyper = _fixed_label(spec)
        rows.append(_result_from(label, spec.kind, hyper, accs, secs))
    return EvalReport(dataset_name=dataset_name, rows=tuple(rows), sweep_curves={})


def compare(ds: Dataset, cfg: ExperimentConfig, dataset_name: str = "dataset") -> EvalReport:
    """Full comparison report over cfg.specs.

    laplace_nb and gaussian_nb are evaluated as configured. kappa_bayes gets
    two rows: the spec's fixed kappa (added to the sweep grid if absent) and
    the best kappa over the grid, both read off one shared sweep. knn gets
    its best k over the k grid. An empty spec list yields an empty report.
    """
    ds = _apply_subset(ds, cfg)
    inner_cfg = _without_subset(cfg)
    rows: list[ClassifierResult] = []
    curves: dict[str, SweepResult] = {}

    for spec in cfg.specs:
        if spec.kind in ("laplace_nb", "gaussian_nb"):
            accs, secs = _cv_timed(ds, spec, inner_cfg, classifiers.fit)
            rows.append(_result_from(spec.kind, spec.kind, None, accs, secs))
        elif spec.kind == "kappa_bayes":
            grid = set(float(v) for v in cfg.kappa_grid)
            grid.add(float(spec.kappa))
            curve = sweep(ds, "kappa_bayes", grid, inner_cfg)
            curves["kappa_bayes"] = curve
            fixed_idx = curve.values.index(float(spec.kappa))
            rows.append(
                _result_from(
                    f"proposed (kappa={_format_value(spec.kappa)})",
                    "kappa_bayes",
                    spec.kappa,
                    curve.per_resample[fixed_idx],
                    curve.seconds[fixed_idx],
                )
            )
            best_idx = curve.values.index(curve.best_value)
            rows.append(
                _result_from(
                    "proposed (optimal kappa)",
                    "kappa_bayes",
                    curve.best_value,
                    curve.per_resample[best_idx],
                    curve.seconds[best_idx],
                )
            )
        elif spec.kind == "knn":
            curve = sweep(ds, "knn", cfg.k_grid, inner_cfg)
            curves["knn"] = curve
            best_idx = curve.values.index(curve.best_value)
            rows.append(
                _result_from(
                    "knn (optimal k)",
                    "knn",
                    curve.best_value,
                    curve.per_resample[best_idx],
                    curve.seconds[best_idx],
                )
            )
        else:  # pragma: no cover - ClassifierSpec already validates kinds
            raise ValueError(f"unknown classifier kind {spec.kind!r}")

    return EvalReport(dataset_name=dataset_name, rows=tuple(rows), sweep_curves=curves)
