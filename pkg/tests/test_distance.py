import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localbayes import DistanceConfig, compute_ranges, distance, pairwise_distances

from helpers import WORKED_GREEN, WORKED_RED, python_distance

UNNORMALIZED = DistanceConfig(normalize=False)


class TestComputeRanges:
    def test_worked_example_pool(self):
        pool = np.array(WORKED_RED + WORKED_GREEN).reshape(-1, 1)
        np.testing.assert_array_equal(compute_ranges(pool), [10.0])

    def test_constant_column_is_zero(self):
        X = np.array([[3.0, 1.0], [3.0, 5.0], [3.0, 2.0]])
        np.testing.assert_array_equal(compute_ranges(X), [0.0, 4.0])

    def test_single_row_all_zero(self):
        np.testing.assert_array_equal(compute_ranges([[1.5, -2.0, 7.0]]), [0.0, 0.0, 0.0])

    def test_empty_matrix_rejected(self):
        with pytest.raises(ValueError):
            compute_ranges(np.empty((0, 3)))


class TestDistance:
    def test_identity(self):
        assert distance([1.0, 2.0], [1.0, 2.0], [4.0, 4.0]) == 0.0

    def test_three_four_five(self):
        assert distance([0.0, 0.0], [3.0, 4.0], [1.0, 1.0]) == pytest.approx(5.0, abs=0)

    def test_unnormalized_unit_gap(self):
        # the worked example's first kernel term comes from this gap of 1
        assert distance([4.0], [5.0], [10.0], UNNORMALIZED) == 1.0

    def test_zero_range_attribute_contributes_nothing(self):
        d = distance([9.0, 0.0], [5.0, 1.0], [0.0, 1.0])
        assert d == 1.0

    def test_normalization_divides_by_range(self):
        assert distance([0.0], [5.0], [10.0]) == 0.5

    def test_pairwise_matches_scalar_route(self):
        rng = np.random.default_rng(42)
        A = rng.normal(size=(7, 3))
        B = rng.normal(size=(5, 3))
        ranges = compute_ranges(B)
        D = pairwise_distances(A, B, ranges)
        for i in range(A.shape[0]):
            for j in range(B.shape[0]):
                assert D[i, j] == distance(A[i], B[j], ranges)

    def test_blocked_evaluation_matches_direct(self, monkeypatch):
        import importlib

        # the package re-exports distance() which shadows the submodule name
        dist_mod = importlib.import_module("localbayes.distance")

        rng = np.random.default_rng(7)
        A = rng.normal(size=(40, 3))
        B = rng.normal(size=(11, 3))
        ranges = compute_ranges(B)
        full = pairwise_distances(A, B, ranges)
        monkeypatch.setattr(dist_mod, "_BLOCK_ELEMENTS", 64)
        np.testing.assert_array_equal(pairwise_distances(A, B, ranges), full)

    def test_matches_python_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            n = int(rng.integers(1, 5))
            X = rng.normal(scale=10.0, size=(6, n))
            ranges = compute_ranges(X)
            a, b = rng.normal(scale=10.0, size=(2, n))
            for normalize in (True, False):
                got = distance(a, b, ranges, DistanceConfig(normalize=normalize))
                want = python_distance(a, b, ranges, normalize)
                np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            distance([1.0, 2.0], [1.0], [1.0, 1.0])
        with pytest.raises(ValueError):
            pairwise_distances(np.ones((2, 2)), np.ones((2, 2)), np.ones(3))


finite_rows = st.integers(min_value=2, max_value=8)
finite_cols = st.integers(min_value=1, max_value=4)


@st.composite
def training_and_pair(draw):
    m, n = draw(finite_rows), draw(finite_cols)
    values = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
    X = np.array([[draw(values) for _ in range(n)] for _ in range(m)])
    a = np.array([draw(values) for _ in range(n)])
    b = np.array([draw(values) for _ in range(n)])
    return X, a, b


class TestDistanceProperties:
    @given(training_and_pair())
    @settings(max_examples=200)
    def test_symmetry_and_nonnegativity(self, case):
        X, a, b = case
        ranges = compute_ranges(X)
        d_ab = distance(a, b, ranges)
        assert d_ab == distance(b, a, ranges)
        assert d_ab >= 0.0
        assert distance(a, a, ranges) == 0.0

    @given(training_and_pair(), st.data())
    @settings(max_examples=200)
    def test_affine_invariance(self, case, data):
        """Rescaling and shifting every attribute leaves distances unchanged
        because the ranges rescale identically. Data is snapped to integers so
        the check is not dominated by cancellation noise."""
        X, a, b = (np.round(arr) for arr in case)
        n = X.shape[1]
        scale = np.array(
            data.draw(
                st.lists(
                    st.floats(min_value=0.01, max_value=100.0), min_size=n, max_size=n
                )
            )
        )
        shift = np.round(
            data.draw(
                st.lists(
                    st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
                    min_size=n,
                    max_size=n,
                )
            )
        )
        before = distance(a, b, compute_ranges(X))
        after = distance(
            a * scale + shift, b * scale + shift, compute_ranges(X * scale + shift)
        )
        np.testing.assert_allclose(after, before, rtol=1e-6, atol=1e-6)

    @given(training_and_pair(), st.integers(min_value=0, max_value=3))
    @settings(max_examples=200)
    def test_monotone_in_each_gap(self, case, j):
        """With ranges held fixed, widening one attribute gap cannot shrink
        the distance."""
        X, a, b = case
        j = j % X.shape[1]
        ranges = np.maximum(compute_ranges(X), 1e-3)
        before = distance(a, b, ranges)
        wider = b.copy()
        wider[j] = a[j] + 2.0 * (b[j] - a[j]) + (1.0 if b[j] == a[j] else 0.0)
        assert distance(a, wider, ranges) >= before
