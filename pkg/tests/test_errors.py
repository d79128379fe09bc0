"""Prediction-error metrics against hand-computed values."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from driftgate import (
    EmptySeriesError,
    LengthMismatchError,
    ZeroTargetError,
    mean_absolute_error,
    mean_absolute_percentage_error,
    mean_squared_error,
    read_series_csv,
    root_mean_squared_error,
)

series_pairs = st.integers(0, 2**32 - 1).map(
    lambda seed: np.random.default_rng(seed).normal(size=(2, 50))
)


class TestOracles:
    def test_identical_series_score_zero(self):
        values = [0.5, -1.25, 3.0]
        assert mean_absolute_error(values, values) == 0.0
        assert mean_squared_error(values, values) == 0.0
        assert root_mean_squared_error(values, values) == 0.0
        assert mean_absolute_percentage_error(values, values) == 0.0

    def test_constant_offset(self):
        actual = [1.0, 2.0, 3.0, 4.0]
        predicted = [v + 0.1 for v in actual]
        assert mean_absolute_error(actual, predicted) == pytest.approx(0.1, abs=1e-15)
        assert mean_squared_error(actual, predicted) == pytest.approx(0.01, abs=1e-15)
        assert root_mean_squared_error(actual, predicted) == pytest.approx(0.1, abs=1e-15)

    def test_hand_computed_mixed_series(self):
        actual, predicted = [1.0, 2.0, 3.0], [2.0, 2.0, 5.0]
        assert mean_absolute_error(actual, predicted) == 1.0
        assert mean_squared_error(actual, predicted) == pytest.approx(5.0 / 3.0)
        assert root_mean_squared_error(actual, predicted) == pytest.approx(math.sqrt(5.0 / 3.0))
        assert mean_absolute_percentage_error(actual, predicted) == pytest.approx(5.0 / 9.0)

    def test_mape_is_a_ratio_not_a_percentage(self):
        assert mean_absolute_percentage_error([2.0], [1.0]) == 0.5

    def test_sign_of_error_is_ignored(self):
        assert mean_absolute_error([1.0, 1.0], [0.0, 2.0]) == 1.0


class TestZeroTargets:
    def test_zero_target_signaled_with_indices(self):
        with pytest.raises(ZeroTargetError) as excinfo:
            mean_absolute_percentage_error([1.0, 0.0, 2.0, 0.0], [1.0, 1.0, 2.0, 2.0])
        assert excinfo.value.indices == [1, 3]

    def test_mask_zeros_drops_undefined_samples(self):
        value = mean_absolute_percentage_error(
            [1.0, 0.0, 2.0], [1.5, 9.0, 2.0], mask_zeros=True
        )
        assert value == pytest.approx(0.25)  # mean of 0.5 and 0.0

    def test_all_zero_targets_cannot_be_masked_away(self):
        with pytest.raises(EmptySeriesError):
            mean_absolute_percentage_error([0.0, 0.0], [1.0, 1.0], mask_zeros=True)


class TestValidation:
    def test_length_mismatch_rejected(self):
        with pytest.raises(LengthMismatchError):
            mean_absolute_error([1.0, 2.0], [1.0])

    def test_empty_series_rejected(self):
        with pytest.raises(EmptySeriesError):
            mean_squared_error([], [])

    def test_non_finite_values_rejected(self):
        with pytest.raises(ValueError):
            mean_absolute_error([1.0, float("nan")], [1.0, 2.0])

    def test_multidimensional_input_rejected(self):
        with pytest.raises(ValueError):
            mean_absolute_error([[1.0], [2.0]], [[1.0], [2.0]])


class TestSeriesCsv:
    def test_values_come_back_in_index_order(self, tmp_path):
        path = tmp_path / "series.csv"
        path.write_text("index,value\n2,0.75\n0,-0.5\n1,0.125\n")
        assert read_series_csv(path).tolist() == [-0.5, 0.125, 0.75]

    def test_two_files_feed_the_metrics(self, tmp_path):
        truth, pred = tmp_path / "truth.csv", tmp_path / "pred.csv"
        truth.write_text("index,value\n0,1.0\n1,2.0\n")
        pred.write_text("index,value\n0,1.1\n1,2.1\n")
        mae = mean_absolute_error(read_series_csv(truth), read_series_csv(pred))
        assert mae == pytest.approx(0.1, abs=1e-15)


class TestInvariants:
    @given(pair=series_pairs)
    @settings(max_examples=80, deadline=None)
    def test_mae_never_exceeds_rmse(self, pair):
        actual, predicted = pair
        assert mean_absolute_error(actual, predicted) <= root_mean_squared_error(
            actual, predicted
        ) + 1e-12

    @given(pair=series_pairs)
    @settings(max_examples=40, deadline=None)
    def test_rmse_is_root_of_mse(self, pair):
        actual, predicted = pair
        assert root_mean_squared_error(actual, predicted) == pytest.approx(
            math.sqrt(mean_squared_error(actual, predicted)), rel=1e-12
        )

    @given(pair=series_pairs)
    @settings(max_examples=40, deadline=None)
    def test_symmetry_in_arguments(self, pair):
        actual, predicted = pair
        assert mean_absolute_error(actual, predicted) == mean_absolute_error(predicted, actual)
        assert mean_squared_error(actual, predicted) == mean_squared_error(predicted, actual)
