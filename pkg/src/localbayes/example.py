"""The packaged two-class, one-attribute walk-through.

Three training samples of one class sit at 5, 10 and 11, four of the other at
1, 2, 7 and 8, and the query is x = 4. The categorical and Gaussian baselines
both pick the second class; the neighborhood-weighted classifier flips to the
first class once kappa passes the point where closeness to 5 outweighs the
larger crowd of moderately distant samples. Distances stay unnormalized here
so the numbers match the hand calculation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifiers import ClassifierSpec, fit
from .dataset import Dataset, bundled_example_path, encode, load_csv

__all__ = ["ExampleOutcome", "load_example_split", "score_ratio", "crossing_kappa", "run_example"]

RATIO_KAPPAS = (1.0, 2.0, 5.0, 60.0)


@dataclass(frozen=True)
class ExampleOutcome:
    dataset: Dataset
    query: np.ndarray
    true_class: str
    laplace_posteriors: dict[str, float]
    laplace_predicted: str
    gaussian_posteriors: dict[str, float]
    gaussian_predicted: str
    ratios: tuple[tuple[float, float, str], ...]  # (kappa, green/red score ratio, predicted)
    threshold: float | None


def load_example_split():
    """Training arrays and the held-out query from the packaged file.

    The single sample at x = 4 is the query; the other seven rows train.
    """
    ds = encode(load_csv(bundled_example_path(), has_header=True, class_column=1))
    query_row = int(np.flatnonzero(ds.X[:, 0] == 4.0)[0])
    mask = np.ones(ds.n_samples, dtype=bool)
    mask[query_row] = False
    X_train, y_train = ds.X[mask], ds.y[mask]
    x_query = ds.X[query_row]
    true_class = ds.class_names[int(ds.y[query_row])]
    return ds, X_train, y_train, x_query, true_class


def score_ratio(kappa: float, X_train, y_train, x_query) -> float:
    """First-class over second-class score under unnormalized distances."""
    spec = ClassifierSpec(kind="kappa_bayes", kappa=kappa, normalize=False)
    result = fit(spec, X_train, y_train).score(x_query)
    return float(result.scores[0] / result.scores[1])


def crossing_kappa(X_train, y_train, x_query, hi: float = 100.0) -> float | None:
    """Where the score ratio crosses 1, by bisection; None if it never does."""

    def gap(k: float) -> float:
        return score_ratio(k, X_train, y_train, x_query) - 1.0

    lo = 0.0
    step = 1.0
    a = lo
    while a < hi:
        b = min(a + step, hi)
        if gap(a) == 0.0:
            return a
        if gap(a) * gap(b) < 0:
            for _ in range(80):
                mid = 0.5 * (a + b)
                if gap(a) * gap(mid) <= 0:
                    b = mid
                else:
                    a = mid
            return 0.5 * (a + b)
        a = b
    return None


def run_example() -> ExampleOutcome:
    ds, X_train, y_train, x_query, true_class = load_example_split()

    def posterior_block(kind: str):
        spec = ClassifierSpec(kind=kind)
        result = fit(spec, X_train, y_train).score(x_query)
        posteriors = {
            ds.class_names[int(c)]: float(np.exp(s))
            for c, s in zip(result.classes, result.scores)
        }
        return posteriors, ds.class_names[result.predicted]

    laplace_post, laplace_pred = posterior_block("laplace_nb")
    gaussian_post, gaussian_pred = posterior_block("gaussian_nb")

    ratios = []
    for kappa in RATIO_KAPPAS:
        spec = ClassifierSpec(kind="kappa_bayes", kappa=kappa, normalize=False)
        result = fit(spec, X_train, y_train).score(x_query)
        ratio = float(result.scores[0] / result.scores[1])
        ratios.append((kappa, ratio, ds.class_names[result.predicted]))

    return ExampleOutcome(
        dataset=ds,
        query=x_query,
        true_class=true_class,
        laplace_posteriors=laplace_post,
        laplace_predicted=laplace_pred,
        gaussian_posteriors=gaussian_post,
        gaussian_predicted=gaussian_pred,
        ratios=tuple(ratios),
        threshold=crossing_kappa(X_train, y_train, x_query),
    )
