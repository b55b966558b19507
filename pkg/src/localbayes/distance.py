"""Range-normalized Euclidean distance between encoded samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DistanceConfig", "compute_ranges", "distance", "pairwise_distances"]

# cap on elements of one difference block, keeps memory bounded on large tables
_BLOCK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class DistanceConfig:
    """When ``normalize`` is true, each attribute difference is divided by that
    attribute's training range before squaring. Attributes whose training range
    is zero contribute nothing to the distance."""

    normalize: bool = True


def compute_ranges(X_train) -> np.ndarray:
    """Per-attribute value range (max minus min) over the training rows."""
    X = np.asarray(X_train, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("expected a 2-d training matrix")
    if X.shape[0] < 1:
        raise ValueError("cannot compute ranges of an empty training matrix")
    return X.max(axis=0) - X.min(axis=0)


def _inverse_scale(ranges: np.ndarray, config: DistanceConfig) -> np.ndarray:
    ranges = np.asarray(ranges, dtype=np.float64)
    if np.any(ranges < 0):
        raise ValueError("ranges must be non-negative")
    if not config.normalize:
        return np.ones_like(ranges)
    scale = np.zeros_like(ranges)
    nonzero = ranges > 0
    scale[nonzero] = 1.0 / ranges[nonzero]
    return scale


def pairwise_distances(A, B, ranges, config: DistanceConfig = DistanceConfig()) -> np.ndarray:
    """Distance matrix of shape (len(A), len(B)).

    Computed in row blocks of A so the intermediate difference tensor stays
    small on large inputs.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise ValueError("A and B must be 2-d with matching attribute counts")
    scale = _inverse_scale(ranges, config)
    if scale.shape != (A.shape[1],):
        raise ValueError("ranges length must match the attribute count")

    out = np.empty((A.shape[0], B.shape[0]), dtype=np.float64)
    step = max(1, _BLOCK_ELEMENTS // max(1, B.shape[0] * max(1, A.shape[1])))
    for start in range(0, A.shape[0], step):
        stop = min(start + step, A.shape[0])
        diff = (A[start:stop, None, :] - B[None, :, :]) * scale
        out[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return out


def distance(a, b, ranges, config: DistanceConfig = DistanceConfig()) -> float:
    """Distance between two single samples."""
    a = np.asarray(a, dtype=np.float64).reshape(1, -1)
    b = np.asarray(b, dtype=np.float64).reshape(1, -1)
    return float(pairwise_distances(a, b, ranges, config)[0, 0])
