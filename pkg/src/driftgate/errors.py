"""Prediction-error metrics for paired actual/predicted series.

Sums are accumulated in extended precision (``np.longdouble``) so long
drives don't lose low-order bits before the final division; results come
back as plain floats.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .exceptions import EmptySeriesError, LengthMismatchError, ZeroTargetError
from .validation import check_series


def _check_pair(actual, predicted) -> tuple[np.ndarray, np.ndarray]:
    actual = check_series(actual, "actual")
    predicted = check_series(predicted, "predicted")
    if actual.shape != predicted.shape:
        raise LengthMismatchError(
            f"series lengths differ: {actual.shape[0]} != {predicted.shape[0]}"
        )
    if actual.shape[0] == 0:
        raise EmptySeriesError("error metrics need at least one sample")
    return actual, predicted


def mean_absolute_error(actual, predicted) -> float:
    """Mean of ``|actual - predicted|``."""
    actual, predicted = _check_pair(actual, predicted)
    diff = np.abs(actual.astype(np.longdouble) - predicted.astype(np.longdouble))
    return float(diff.sum() / diff.shape[0])


def mean_absolute_percentage_error(actual, predicted, mask_zeros: bool = False) -> float:
    """Mean of ``|actual - predicted| / |actual|`` (a ratio: 0.5, not 50).

    Zeros in ``actual`` make the ratio undefined; by default that raises
    :class:`ZeroTargetError` listing the offending indices.  With
    ``mask_zeros=True`` those samples are dropped instead (raising only if
    nothing remains).
    """
    actual, predicted = _check_pair(actual, predicted)
    zero = actual == 0.0
    if zero.any():
        if not mask_zeros:
            raise ZeroTargetError(np.flatnonzero(zero).tolist())
        keep = ~zero
        if not keep.any():
            raise EmptySeriesError("all samples have zero targets; nothing to average")
        actual, predicted = actual[keep], predicted[keep]
    ratio = np.abs(
        (actual.astype(np.longdouble) - predicted.astype(np.longdouble))
        / actual.astype(np.longdouble)
    )
    return float(ratio.sum() / ratio.shape[0])


def mean_squared_error(actual, predicted) -> float:
    """Mean of ``(actual - predicted) ** 2``."""
    actual, predicted = _check_pair(actual, predicted)
    diff = actual.astype(np.longdouble) - predicted.astype(np.longdouble)
    return float((diff * diff).sum() / diff.shape[0])


def root_mean_squared_error(actual, predicted) -> float:
    """Square root of the mean squared error."""
    return math.sqrt(mean_squared_error(actual, predicted))


def read_series_csv(path: str | Path) -> np.ndarray:
    """Load a value series from a two-column ``index,value`` CSV.

    Rows may appear in any order; the index column determines the order of
    the returned values, so two files indexed the same way can be compared
    directly with the metrics above.
    """
    rows: dict[int, float] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows[int(row["index"])] = float(row["value"])
    return np.array([rows[index] for index in sorted(rows)], dtype=np.float64)
