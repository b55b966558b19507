"""Shared test utilities: dataset construction and independent oracles.

The oracles reimplement the documented behavior in plain Python, without
touching the library's vectorized code paths, so tests compare two
independently written routes.
"""

import math
from collections import Counter

import numpy as np

from localbayes import Dataset

WORKED_GREEN = [5.0, 10.0, 11.0]
WORKED_RED = [1.0, 2.0, 7.0, 8.0]
WORKED_QUERY = 4.0


def build_dataset(X, y, class_names=None) -> Dataset:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if class_names is None:
        class_names = [f"c{c}" for c in range(int(y.max()) + 1 if len(y) else 0)]
    return Dataset(
        X=X.copy(),
        y=y.copy(),
        class_names=list(class_names),
        encoders=[{} for _ in range(X.shape[1])],
        feature_names=[f"attr{j}" for j in range(X.shape[1])],
    )


def worked_example_ratio(kappa: float) -> float:
    """Hand expression for the worked example's green/red score ratio."""
    green = 2.0**-kappa + 7.0**-kappa + 8.0**-kappa
    red = 4.0**-kappa + 3.0**-kappa + 4.0**-kappa + 5.0**-kappa
    return green / red


def python_distance(a, b, ranges, normalize: bool) -> float:
    total = 0.0
    for j in range(len(a)):
        if normalize:
            if ranges[j] > 0:
                total += ((a[j] - b[j]) / ranges[j]) ** 2
        else:
            total += (a[j] - b[j]) ** 2
    return math.sqrt(total)


def python_ranges(X):
    return [max(col) - min(col) for col in zip(*[list(row) for row in X])]


def python_kappa_scores(X_train, y_train, x, kappa: float, normalize: bool):
    """Two-loop class scores: sum over same-class samples of (1+d)^-kappa."""
    ranges = python_ranges(X_train)
    scores: dict[int, float] = {}
    for row, label in zip(X_train, y_train):
        d = python_distance(x, row, ranges, normalize)
        scores[int(label)] = scores.get(int(label), 0.0) + (1.0 + d) ** (-kappa)
    return scores


def documented_argmax(scores, classes, class_counts) -> int:
    """The tie rule as documented: best score, then larger count, then smaller id."""
    best = None
    for c, s, n in zip(classes, scores, class_counts):
        key = (s, n, -int(c))
        if best is None or key > best[0]:
            best = (key, int(c))
    return best[1]


def python_knn_predict(X_train, y_train, x, k: int, normalize: bool) -> int:
    """Brute-force full-sort neighbor vote with the documented tie rules."""
    ranges = python_ranges(X_train)
    dists = [python_distance(x, row, ranges, normalize) for row in X_train]
    order = sorted(range(len(X_train)), key=lambda i: (dists[i], i))
    votes = Counter(int(y_train[i]) for i in order[:k])
    totals = Counter(int(c) for c in y_train)
    classes = sorted(totals)
    return documented_argmax(
        [votes.get(c, 0) for c in classes], classes, [totals[c] for c in classes]
    )
