"""driftgate: pixel-intensity distribution-shift metrics and safety gating.

Quantifies how far a camera frame's intensity distribution has drifted from
training conditions (histogram intersection, relative entropy, Bhattacharyya
distance), applies controlled saturating intensity shifts to produce test
conditions, scores model predictions under those shifts, and renders a
boolean safe/defer decision per frame from calibrated thresholds.
"""

from .dataset import DriveRecord, NamingConfig, load_dataset, read_predictions_csv
from .distances import (
    DEFAULT_EPSILON,
    DistanceReport,
    bhattacharyya_distance,
    distance_report,
    histogram_intersection,
    relative_entropy,
)
from .errors import (
    mean_absolute_error,
    mean_absolute_percentage_error,
    mean_squared_error,
    read_series_csv,
    root_mean_squared_error,
)
from .estimators import DistributionShiftGate, FramePreprocessor, IntensityShift
from .exceptions import (
    CoverageGapError,
    CropExceedsHeightError,
    DatasetTooSmallError,
    DriftGateError,
    EmptyHistogramError,
    EmptyReferenceSetError,
    EmptyResultsError,
    EmptySeriesError,
    InfiniteDistanceError,
    LengthMismatchError,
    MalformedRecordError,
    MismatchedTotalsError,
    MissingRecordError,
    NonPositiveEpsilonError,
    UnwritablePathError,
    ZeroTargetError,
)
from .experiments import (
    ErrorSummary,
    PairTableRow,
    ResidualRow,
    SweepResult,
    evaluate_errors,
    pair_table,
    sweep,
)
from .gate import (
    GateDecision,
    MetricCheck,
    SafetyThresholds,
    calibrate,
    first_unsafe_frame,
    gate,
    gate_report,
    gate_stream,
    load_thresholds,
    save_thresholds,
)
from .histogram import (
    IntensityHistogram,
    build_channel_histograms,
    build_histogram,
    normalized,
    read_histogram_csv,
    write_histogram_csv,
)
from .image import (
    PreprocessSpec,
    channel_mean,
    load_image,
    preprocess,
    rgb_to_yuv,
    save_image,
    shift_image,
    to_space,
    yuv_to_rgb,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_EPSILON",
    "CoverageGapError",
    "CropExceedsHeightError",
    "DatasetTooSmallError",
    "DistanceReport",
    "DistributionShiftGate",
    "DriftGateError",
    "DriveRecord",
    "EmptyHistogramError",
    "EmptyReferenceSetError",
    "EmptyResultsError",
    "EmptySeriesError",
    "ErrorSummary",
    "FramePreprocessor",
    "GateDecision",
    "InfiniteDistanceError",
    "IntensityHistogram",
    "IntensityShift",
    "LengthMismatchError",
    "MalformedRecordError",
    "MetricCheck",
    "MismatchedTotalsError",
    "MissingRecordError",
    "NamingConfig",
    "NonPositiveEpsilonError",
    "PairTableRow",
    "PreprocessSpec",
    "ResidualRow",
    "SafetyThresholds",
    "SweepResult",
    "UnwritablePathError",
    "ZeroTargetError",
    "bhattacharyya_distance",
    "build_channel_histograms",
    "build_histogram",
    "calibrate",
    "channel_mean",
    "distance_report",
    "evaluate_errors",
    "first_unsafe_frame",
    "gate",
    "gate_report",
    "gate_stream",
    "histogram_intersection",
    "load_dataset",
    "load_image",
    "load_thresholds",
    "mean_absolute_error",
    "mean_absolute_percentage_error",
    "mean_squared_error",
    "normalized",
    "pair_table",
    "preprocess",
    "read_histogram_csv",
    "read_predictions_csv",
    "read_series_csv",
    "relative_entropy",
    "rgb_to_yuv",
    "root_mean_squared_error",
    "save_image",
    "save_thresholds",
    "shift_image",
    "sweep",
    "to_space",
    "write_histogram_csv",
    "yuv_to_rgb",
]
