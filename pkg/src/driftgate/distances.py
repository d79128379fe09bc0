"""Distribution-distance metrics between intensity histograms.

All three metrics compare two histograms with equal sample totals:

* histogram intersection — overlap in ``[0, 1]``, 1 means identical;
* relative entropy — asymmetric divergence in base-10 log, smoothed by an
  additive epsilon on the raw counts;
* Bhattacharyya distance — symmetric, unbounded, infinite for histograms
  with disjoint support.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    EmptyHistogramError,
    InfiniteDistanceError,
    MismatchedTotalsError,
    NonPositiveEpsilonError,
)
from .histogram import IntensityHistogram

DEFAULT_EPSILON = 1.0


def _check_pair(p: IntensityHistogram, q: IntensityHistogram) -> int:
    if p.total == 0 or q.total == 0:
        raise EmptyHistogramError("distance metrics need histograms with at least one sample")
    if p.total != q.total:
        raise MismatchedTotalsError(
            f"histograms have different sample totals: {p.total} != {q.total}"
        )
    return p.total


def histogram_intersection(p: IntensityHistogram, q: IntensityHistogram) -> float:
    """Shared mass ``sum(min(p, q)) / total`` in ``[0, 1]``."""
    total = _check_pair(p, q)
    return float(np.minimum(p.bins, q.bins).sum() / total)


def relative_entropy(
    p: IntensityHistogram,
    q: IntensityHistogram,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """Divergence of ``q`` from the reference ``p`` in base-10 log.

    Asymmetric: the first histogram is the reference whose bin masses weight
    the log ratios.  ``epsilon`` is added to the raw counts of both sides so
    empty bins contribute finite terms; it must be positive.
    """
    if not epsilon > 0:
        raise NonPositiveEpsilonError(f"epsilon must be positive, got {epsilon}")
    total = _check_pair(p, q)
    ratio = (p.bins + epsilon) / (q.bins + epsilon)
    return float(np.sum((p.bins / total) * np.log10(ratio)))


def bhattacharyya_distance(p: IntensityHistogram, q: IntensityHistogram) -> float:
    """Symmetric distance ``-ln(sum(sqrt(p * q)) / total)``.

    Raises :class:`InfiniteDistanceError` when the histograms share no
    occupied bin, since the coefficient is 0 and the distance diverges.
    """
    total = _check_pair(p, q)
    coefficient = float(np.sqrt(p.bins * q.bins).sum() / total)
    if coefficient == 0.0:
        raise InfiniteDistanceError(
            "histograms have disjoint support; Bhattacharyya distance is infinite"
        )
    # The coefficient is <= 1 by Cauchy-Schwarz; clamping guards the float
    # rounding that would otherwise let -log return -0.0 or -1e-16.
    return max(0.0, -math.log(coefficient))


@dataclass(frozen=True)
class DistanceReport:
    """All three metrics for one histogram pair, plus the knobs that shaped them."""

    space: str
    hi: float
    kl: float
    db: float
    epsilon: float = DEFAULT_EPSILON


def distance_report(
    p: IntensityHistogram,
    q: IntensityHistogram,
    space: str = "rgb",
    epsilon: float = DEFAULT_EPSILON,
) -> DistanceReport:
    """Evaluate all three metrics on one pair.

    Unlike the standalone metric, a disjoint-support pair does not raise
    here: the report records ``db = inf`` so batch sweeps survive degenerate
    pairs (the intersection is 0 for such pairs, which gates correctly).
    """
    try:
        db = bhattacharyya_distance(p, q)
    except InfiniteDistanceError:
        db = math.inf
    return DistanceReport(
        space=space,
        hi=histogram_intersection(p, q),
        kl=relative_entropy(p, q, epsilon),
        db=db,
        epsilon=epsilon,
    )


def write_distance_csv(report: DistanceReport, path: str | Path) -> None:
    """Single-row CSV with header ``space,hi,kl,db,epsilon``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["space", "hi", "kl", "db", "epsilon"])
        writer.writerow([report.space, report.hi, report.kl, report.db, report.epsilon])


def read_distance_csv(path: str | Path) -> DistanceReport:
    """Load a report written by :func:`write_distance_csv`."""
    with open(path, newline="") as fh:
        row = next(csv.DictReader(fh))
    return DistanceReport(
        space=row["space"],
        hi=float(row["hi"]),
        kl=float(row["kl"]),
        db=float(row["db"]),
        epsilon=float(row["epsilon"]),
    )


def write_distance_json(report: DistanceReport, path: str | Path) -> None:
    """JSON twin of the CSV export, same five fields."""
    payload = {
        "space": report.space,
        "hi": report.hi,
        "kl": report.kl,
        "db": report.db,
        "epsilon": report.epsilon,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
