"""Shift-sweep and random-pair experiments over images and drive logs.

These compose the image, histogram, and distance kernels into the batch
procedures the CLI exposes: sweeping one image across a shift range, scoring
randomly sampled frame pairs at fixed shifts, and summarizing prediction
error against logged ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import DriveRecord, match_predictions
from .distances import DEFAULT_EPSILON, distance_report
from .errors import (
    mean_absolute_error,
    mean_absolute_percentage_error,
    mean_squared_error,
    root_mean_squared_error,
)
from .exceptions import DatasetTooSmallError
from .histogram import build_histogram
from .image import load_image, shift_image, to_space
from .validation import check_image, check_shift, check_space

DEFAULT_SWEEP_RANGE = (-120, 120)
DEFAULT_PAIR_SHIFTS = (-120, -80, -40, 0, 40, 80, 120)
METRIC_NAMES = ("hi", "kl", "db")


@dataclass(frozen=True)
class SweepResult:
    """Distances between an image and itself shifted by ``shift``."""

    shift: int
    hi: float
    kl: float
    db: float
    space: str


def sweep(
    image: np.ndarray,
    from_shift: int = DEFAULT_SWEEP_RANGE[0],
    to_shift: int = DEFAULT_SWEEP_RANGE[1],
    step: int = 1,
    space: str = "rgb",
    epsilon: float = DEFAULT_EPSILON,
) -> list[SweepResult]:
    """Compare an image against shifted copies of itself across a range.

    Emits one row per shift in ``from_shift, from_shift + step, ... <=
    to_shift``; the default range yields 241 rows.  In YUV mode the image is
    converted once and the shifts applied to the converted planes.
    """
    image = check_image(image)
    from_shift, to_shift = check_shift(from_shift), check_shift(to_shift)
    if from_shift > to_shift:
        raise ValueError(f"from_shift {from_shift} exceeds to_shift {to_shift}")
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    space = check_space(space)
    base = to_space(image, space)
    reference = build_histogram(base)
    results = []
    for shift in range(from_shift, to_shift + 1, step):
        report = distance_report(
            reference, build_histogram(shift_image(base, shift)), space, epsilon
        )
        results.append(
            SweepResult(shift=shift, hi=report.hi, kl=report.kl, db=report.db, space=space)
        )
    return results


@dataclass(frozen=True)
class PairTableRow:
    """One sampled frame pair and a metric's value at each probed shift.

    ``values`` maps shift -> metric value; the second frame is the shifted
    one, the first stays as logged.
    """

    id1: int
    id2: int
    values: dict[int, float]


def pair_table(
    records: list[DriveRecord],
    n_pairs: int,
    shift_set: tuple[int, ...] = DEFAULT_PAIR_SHIFTS,
    metric: str = "hi",
    space: str = "rgb",
    epsilon: float = DEFAULT_EPSILON,
    seed: int = 0,
) -> list[PairTableRow]:
    """Score randomly sampled frame pairs at each shift in ``shift_set``.

    Sampling uses numpy's seeded PCG64 generator and draws both frames of a
    pair independently with replacement (a frame may be paired with itself),
    so a given seed reproduces the same table on any platform.
    """
    if len(records) < 2:
        raise DatasetTooSmallError(f"pair sampling needs >= 2 frames, got {len(records)}")
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    if metric not in METRIC_NAMES:
        raise ValueError(f"metric must be one of {METRIC_NAMES}, got {metric!r}")
    space = check_space(space)
    shift_set = tuple(check_shift(s) for s in shift_set)

    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(records), size=(n_pairs, 2))

    cache: dict[int, np.ndarray] = {}

    def base_image(position: int) -> np.ndarray:
        if position not in cache:
            cache[position] = to_space(load_image(records[position].image_path), space)
        return cache[position]

    rows = []
    for first, second in picks:
        reference = build_histogram(base_image(first))
        values = {}
        for shift in shift_set:
            shifted = build_histogram(shift_image(base_image(second), shift))
            report = distance_report(reference, shifted, space, epsilon)
            values[shift] = getattr(report, metric)
        rows.append(
            PairTableRow(
                id1=records[first].frame_index, id2=records[second].frame_index, values=values
            )
        )
    return rows


@dataclass(frozen=True)
class ResidualRow:
    """Ground truth vs. prediction for one frame; residual = actual - predicted."""

    frame: int
    actual: float
    predicted: float
    residual: float


@dataclass(frozen=True)
class ErrorSummary:
    """Aggregate prediction-error metrics for one shift condition.

    ``mape`` is None whenever ground truth contains zeros (the offending
    frames are listed instead), since the percentage is undefined there.
    """

    shift: int
    n_frames: int
    mae: float
    mse: float
    rmse: float
    mape: float | None
    zero_target_frames: tuple[int, ...] = ()


def evaluate_errors(
    records: list[DriveRecord],
    predictions: dict[int, float],
    shift: int = 0,
) -> tuple[ErrorSummary, list[ResidualRow]]:
    """Score predictions against logged steering, frame by frame.

    ``shift`` tags which intensity-shift condition produced the predictions;
    it is carried into the summary, not applied to anything here.  Every
    frame must have a prediction.
    """
    actual, predicted = match_predictions(records, predictions)
    residuals = [
        ResidualRow(frame=r.frame_index, actual=a, predicted=p, residual=a - p)
        for r, a, p in zip(records, actual, predicted)
    ]
    zero_frames = tuple(r.frame_index for r, a in zip(records, actual) if a == 0.0)
    mape = None if zero_frames else mean_absolute_percentage_error(actual, predicted)
    summary = ErrorSummary(
        shift=check_shift(shift),
        n_frames=len(records),
        mae=mean_absolute_error(actual, predicted),
        mse=mean_squared_error(actual, predicted),
        rmse=root_mean_squared_error(actual, predicted),
        mape=mape,
        zero_target_frames=zero_frames,
    )
    return summary, residuals
