"""Four classifiers behind one fit/score/predict interface.

kind = "kappa_bayes"
    The proposed classifier. Each training sample votes for its class with
    weight (1 + d)^-kappa, where d is the range-normalized Euclidean distance
    to the query. The class score is the plain sum of those weights, which is
    the class-count-weighted average conditional times the empirical prior
    with the constant 1/m dropped. kappa = 0 degenerates to majority voting;
    very large kappa counts exact matches only.

kind = "laplace_nb"
    Categorical naive Bayes. Prior (n_c + k)/(m + k*C) with k = laplace_k.
    Conditional for attribute value v: (n_cv + 1)/(n_c + V_i), where V_i is
    the number of distinct values attribute i takes in the training data.
    Every distinct real is its own category, so the model is only meaningful
    on discrete attributes. Scores are log-domain.

kind = "gaussian_nb"
    Naive Bayes with one normal per class and attribute. Mean and variance
    are the population statistics of the class's training rows (divisor n_c).
    Variances are floored at variance_floor * max(range^2, 1) per attribute so
    constant attributes stay usable. Same smoothed prior as laplace_nb with
    k = 1. Scores are log-domain.

kind = "knn"
    k-nearest-neighbor votes under the same distance as kappa_bayes.
    Neighbor ties at the distance boundary go to the smaller training-row
    index.

Ties in the final argmax are broken deterministically: larger training class
count first, then smaller class id.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .distance import DistanceConfig, compute_ranges, pairwise_distances

__all__ = [
    "KINDS",
    "ClassifierSpec",
    "ClassScore",
    "FittedModel",
    "fit",
    "score",
    "predict",
    "m_estimate_conditional",
    "spec_to_text",
    "spec_from_text",
]

KINDS = ("kappa_bayes", "laplace_nb", "gaussian_nb", "knn")


@dataclass(frozen=True)
class ClassifierSpec:
    """Hyperparameters naming one classifier configuration.

    Unused fields are ignored by the other kinds, so one spec type serializes
    every classifier.
    """

    kind: str
    kappa: float = 60.0
    k_neighbors: int = 5
    normalize: bool = True
    laplace_k: float = 1.0
    variance_floor: float = 1e-9

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown classifier kind {self.kind!r}, expected one of {KINDS}")
        if not (np.isfinite(self.kappa) and self.kappa >= 0):
            raise ValueError("kappa must be a finite non-negative real")
        if int(self.k_neighbors) != self.k_neighbors or self.k_neighbors < 1:
            raise ValueError("k_neighbors must be a positive integer")
        if not (np.isfinite(self.laplace_k) and self.laplace_k > 0):
            raise ValueError("laplace_k must be positive")
        if not (np.isfinite(self.variance_floor) and self.variance_floor > 0):
            raise ValueError("variance_floor must be positive")

    def with_kappa(self, kappa: float) -> "ClassifierSpec":
        return replace(self, kappa=float(kappa))

    def with_k(self, k: int) -> "ClassifierSpec":
        return replace(self, k_neighbors=int(k))


@dataclass(frozen=True)
class ClassScore:
    """Per-class decision values for one query sample.

    ``scores[i]`` belongs to class id ``classes[i]``. When ``log_space`` is
    true the values are log posteriors up to a shared constant; otherwise they
    are plain non-negative scores. ``predicted`` already applies the tie rule.
    """

    classes: np.ndarray
    scores: np.ndarray
    predicted: int
    log_space: bool


def m_estimate_conditional(n_matches, n_class, weight, value_prior):
    """General smoothed conditional (n_matches + weight*prior)/(n_class + weight).

    The default add-one conditional is the special case weight = V_i,
    value_prior = 1/V_i. Accepts scalars or arrays.
    """
    weight = np.asarray(weight, dtype=np.float64)
    value_prior = np.asarray(value_prior, dtype=np.float64)
    if np.any(weight <= 0):
        raise ValueError("weight must be positive")
    if np.any((value_prior < 0) | (value_prior > 1)):
        raise ValueError("value_prior must lie in [0, 1]")
    return (np.asarray(n_matches, dtype=np.float64) + weight * value_prior) / (
        np.asarray(n_class, dtype=np.float64) + weight
    )


class FittedModel:
    """Shared state: ordered class ids, their training counts and ranges."""

    log_space = False

    def __init__(self, spec: ClassifierSpec, X: np.ndarray, y: np.ndarray):
        self.spec = spec
        self.classes, self.class_counts = np.unique(y, return_counts=True)
        self.m = int(X.shape[0])
        self.n_features = int(X.shape[1])
        self.ranges = compute_ranges(X)
        # preference order for exact score ties: larger count, then smaller id
        self._tie_order = np.lexsort((self.classes, -self.class_counts))

    def _score_matrix(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_query(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected a 2-d query with {self.n_features} attributes")
        return X

    def predict(self, X) -> np.ndarray:
        """Predicted class id per query row."""
        X = self._check_query(X)
        S = self._score_matrix(X)
        ordered = S[:, self._tie_order]
        picks = np.argmax(ordered, axis=1)  # first max, so the tie order wins
        return self.classes[self._tie_order[picks]]

    def score(self, x) -> ClassScore:
        """Per-class scores for a single query sample."""
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise ValueError("score expects a single 1-d sample")
        X = self._check_query(x.reshape(1, -1))
        S = self._score_matrix(X)
        ordered = S[:, self._tie_order]
        predicted = int(self.classes[self._tie_order[int(np.argmax(ordered[0]))]])
        return ClassScore(
            classes=self.classes.copy(),
            scores=S[0].copy(),
            predicted=predicted,
            log_space=self.log_space,
        )

    def _one_hot(self, y: np.ndarray) -> np.ndarray:
        codes = np.searchsorted(self.classes, y)
        hot = np.zeros((len(y), len(self.classes)), dtype=np.float64)
        hot[np.arange(len(y)), codes] = 1.0
        return hot

    def _log_prior(self, k: float) -> np.ndarray:
        C = len(self.classes)
        return np.log((self.class_counts + k) / (self.m + k * C))


class _KappaBayesModel(FittedModel):
    def __init__(self, spec, X, y):
        super().__init__(spec, X, y)
        self._train = X.copy()
        self._membership = self._one_hot(y)
        self._distance_config = DistanceConfig(normalize=spec.normalize)

    def _score_matrix(self, X):
        D = pairwise_distances(X, self._train, self.ranges, self._distance_config)
        weights = (1.0 + D) ** (-self.spec.kappa)
        return weights @ self._membership


class _KNNModel(FittedModel):
    def __init__(self, spec, X, y):
        if spec.k_neighbors > X.shape[0]:
            raise ValueError(
                f"k_neighbors={spec.k_neighbors} exceeds the {X.shape[0]} training samples"
            )
        super().__init__(spec, X, y)
        self._train = X.copy()
        self._membership = self._one_hot(y)
        self._distance_config = DistanceConfig(normalize=spec.normalize)

    def _score_matrix(self, X):
        D = pairwise_distances(X, self._train, self.ranges, self._distance_config)
        # stable sort keeps the original row order among equal distances
        nearest = np.argsort(D, axis=1, kind="stable")[:, : self.spec.k_neighbors]
        return self._membership[nearest].sum(axis=1)


class _LaplaceNBModel(FittedModel):
    log_space = True

    def __init__(self, spec, X, y):
        super().__init__(spec, X, y)
        codes = np.searchsorted(self.classes, y)
        C = len(self.classes)
        self._values: list[np.ndarray] = []
        self._counts: list[np.ndarray] = []
        for j in range(self.n_features):
            uniq, inverse = np.unique(X[:, j], return_inverse=True)
            counts = np.zeros((C, len(uniq)), dtype=np.int64)
            np.add.at(counts, (codes, inverse), 1)
            self._values.append(uniq)
            self._counts.append(counts)

    def _score_matrix(self, X):
        R = X.shape[0]
        total = np.tile(self._log_prior(self.spec.laplace_k), (R, 1))
        n_c = self.class_counts.astype(np.float64)
        for j in range(self.n_features):
            uniq, counts = self._values[j], self._counts[j]
            V = len(uniq)
            pos = np.searchsorted(uniq, X[:, j])
            pos_clipped = np.minimum(pos, V - 1)
            seen = (pos < V) & (uniq[pos_clipped] == X[:, j])
            matched = np.where(seen[None, :], counts[:, pos_clipped], 0)  # (C, R)
            total += np.log((matched + 1.0) / (n_c[:, None] + V)).T
        return total


class _GaussianNBModel(FittedModel):
    log_space = True

    def __init__(self, spec, X, y):
        super().__init__(spec, X, y)
        C = len(self.classes)
        self._mu = np.empty((C, self.n_features), dtype=np.float64)
        var = np.empty((C, self.n_features), dtype=np.float64)
        for i, c in enumerate(self.classes):
            rows = X[y == c]
            self._mu[i] = rows.mean(axis=0)
            var[i] = ((rows - self._mu[i]) ** 2).mean(axis=0)  # population form
        floor = spec.variance_floor * np.maximum(self.ranges**2, 1.0)
        self._var = np.maximum(var, floor)

    def _score_matrix(self, X):
        diff = X[:, None, :] - self._mu[None, :, :]
        log_density = -0.5 * np.sum(
            np.log(2.0 * np.pi * self._var) + diff**2 / self._var, axis=2
        )
        return log_density + self._log_prior(self.spec.laplace_k)


_MODEL_TYPES = {
    "kappa_bayes": _KappaBayesModel,
    "laplace_nb": _LaplaceNBModel,
    "gaussian_nb": _GaussianNBModel,
    "knn": _KNNModel,
}


def fit(spec: ClassifierSpec, X_train, y_train) -> FittedModel:
    """Train the classifier named by ``spec`` on encoded data."""
    X = np.asarray(X_train, dtype=np.float64)
    y = np.asarray(y_train)
    if X.ndim != 2:
        raise ValueError("X_train must be 2-d")
    if y.ndim != 1 or y.shape[0] != X.shape[0]:
        raise ValueError("y_train must be 1-d and match X_train rows")
    if X.shape[0] < 1:
        raise ValueError("training set must not be empty")
    if not np.all(np.isfinite(X)):
        raise ValueError("X_train must be finite")
    return _MODEL_TYPES[spec.kind](spec, X, y)


def score(model: FittedModel, x) -> ClassScore:
    return model.score(x)


def predict(model: FittedModel, X) -> np.ndarray:
    return model.predict(X)


_SPEC_FIELDS = ("kind", "kappa", "k_neighbors", "normalize", "laplace_k", "variance_floor")


def spec_to_text(spec: ClassifierSpec) -> str:
    """Render a spec as key = value lines; inverse of spec_from_text."""
    lines = [
        f"kind = {spec.kind}",
        f"kappa = {spec.kappa!r}",
        f"k_neighbors = {spec.k_neighbors}",
        f"normalize = {'true' if spec.normalize else 'false'}",
        f"laplace_k = {spec.laplace_k!r}",
        f"variance_floor = {spec.variance_floor!r}",
    ]
    return "\n".join(lines) + "\n"


def spec_from_text(text: str) -> ClassifierSpec:
    values: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"spec line {line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _SPEC_FIELDS:
            raise ValueError(f"spec line {line_no}: unknown field {key!r}")
        values[key] = value.strip()
    if "kind" not in values:
        raise ValueError("classifier spec text must name a kind")

    kwargs: dict = {"kind": values["kind"]}
    if "kappa" in values:
        kwargs["kappa"] = float(values["kappa"])
    if "k_neighbors" in values:
        kwargs["k_neighbors"] = int(values["k_neighbors"])
    if "normalize" in values:
        lowered = values["normalize"].lower()
        if lowered not in {"true", "false"}:
            raise ValueError("normalize must be true or false")
        kwargs["normalize"] = lowered == "true"
    if "laplace_k" in values:
        kwargs["laplace_k"] = float(values["laplace_k"])
    if "variance_floor" in values:
        kwargs["variance_floor"] = float(values["variance_floor"])
    return ClassifierSpec(**kwargs)
