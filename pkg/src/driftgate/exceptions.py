"""Exception types raised across the package.

Every error deliberately signalled by driftgate derives from
:class:`DriftGateError`, so callers (and the CLI) can separate operational
failures from programming bugs with a single except clause.
"""

from __future__ import annotations


class DriftGateError(Exception):
    """Base class for all errors signalled by this package."""


class CropExceedsHeightError(DriftGateError):
    """Requested top+bottom crop removes every row of the input image."""


class EmptyHistogramError(DriftGateError):
    """Histogram has a zero total count and cannot be normalized."""


class MismatchedTotalsError(DriftGateError):
    """Two histograms with different total counts were compared.

    The distance metrics assume both histograms come from images of the
    same geometry, which pins their totals to the same value.
    """


class NonPositiveEpsilonError(DriftGateError):
    """Relative entropy called with epsilon <= 0."""


class InfiniteDistanceError(DriftGateError):
    """Bhattacharyya coefficient is zero (disjoint supports), so the
    distance is unbounded."""


class LengthMismatchError(DriftGateError):
    """Truth and prediction series have different lengths."""


class EmptySeriesError(DriftGateError):
    """An error metric was asked to aggregate zero samples."""


class ZeroTargetError(DriftGateError):
    """MAPE is undefined for zero-valued targets.

    Carries the offending indices so callers can report or mask them.
    """

    def __init__(self, indices: list[int]):
        self.indices = indices
        shown = ", ".join(str(i) for i in indices[:10])
        suffix = ", ..." if len(indices) > 10 else ""
        super().__init__(f"zero-valued targets at indices [{shown}{suffix}]")


class EmptyReferenceSetError(DriftGateError):
    """Calibration needs at least one reference image."""


class MissingRecordError(DriftGateError):
    """A frame image lacks its steering record, or vice versa."""


class MalformedRecordError(DriftGateError):
    """A steering record file exists but lacks the mapped keys."""


class DatasetTooSmallError(DriftGateError):
    """Pair sampling needs at least two frames."""


class CoverageGapError(DriftGateError):
    """A predictions file does not cover every dataset frame.

    Carries the missing frame indices.
    """

    def __init__(self, missing: list[int]):
        self.missing = missing
        shown = ", ".join(str(i) for i in missing[:10])
        suffix = ", ..." if len(missing) > 10 else ""
        super().__init__(f"predictions missing for frames [{shown}{suffix}]")


class EmptyResultsError(DriftGateError):
    """A report was requested for an empty result set."""


class UnwritablePathError(DriftGateError):
    """An output path could not be written."""
