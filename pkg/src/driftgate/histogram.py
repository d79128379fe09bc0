"""Aggregated pixel-intensity histograms.

An image is treated as a bag of intensity samples, one per channel value of
every pixel, so a ``(H, W, 3)`` frame yields ``H*W*3`` samples in 256 bins.
The total sample count rides along with the bins because every distance
metric normalizes by it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import EmptyHistogramError
from .validation import INTENSITY_LEVELS, check_image


@dataclass(frozen=True)
class IntensityHistogram:
    """256 aggregated bin counts and their total.

    ``total`` equals the product of the source image's dimensions including
    the channel axis, and always equals ``bins.sum()``.
    """

    bins: np.ndarray
    total: int = field(default=-1)

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64)
        if bins.shape != (INTENSITY_LEVELS,):
            raise ValueError(f"expected {INTENSITY_LEVELS} bins, got shape {bins.shape}")
        if (bins < 0).any():
            raise ValueError("bin counts must be non-negative")
        object.__setattr__(self, "bins", bins)
        total = int(bins.sum()) if self.total == -1 else int(self.total)
        if total != bins.sum():
            raise ValueError(f"total {total} does not match bin sum {int(bins.sum())}")
        object.__setattr__(self, "total", total)
        bins.setflags(write=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntensityHistogram):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.bins, other.bins)


def build_histogram(image: np.ndarray) -> IntensityHistogram:
    """Count intensity values across all channels combined.

    ``bins[v]`` is the number of samples equal to ``v``; works identically on
    RGB images and YUV buffers.
    """
    image = check_image(image)
    bins = np.bincount(image.reshape(-1), minlength=INTENSITY_LEVELS)
    return IntensityHistogram(bins=bins, total=int(image.size))


def build_channel_histograms(image: np.ndarray) -> tuple[IntensityHistogram, ...]:
    """Per-channel variant: one histogram per plane, each totalling H*W.

    The combined histogram is the default everywhere else; this exists for
    callers that want to inspect channels separately.
    """
    image = check_image(image)
    return tuple(
        IntensityHistogram(
            bins=np.bincount(image[:, :, c].reshape(-1), minlength=INTENSITY_LEVELS),
            total=int(image.shape[0] * image.shape[1]),
        )
        for c in range(image.shape[2])
    )


def normalized(hist: IntensityHistogram) -> np.ndarray:
    """Bin masses ``bins / total`` as float64, summing to 1."""
    if hist.total == 0:
        raise EmptyHistogramError("cannot normalize a histogram with zero samples")
    return hist.bins / hist.total


def write_histogram_csv(hist: IntensityHistogram, path: str | Path) -> None:
    """Export as two columns ``bin,count`` with one row per bin."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["bin", "count"])
        for value, count in enumerate(hist.bins):
            writer.writerow([value, int(count)])


def read_histogram_csv(path: str | Path) -> IntensityHistogram:
    """Load a histogram written by :func:`write_histogram_csv`."""
    bins = np.zeros(INTENSITY_LEVELS, dtype=np.int64)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            bins[int(row["bin"])] = int(row["count"])
    return IntensityHistogram(bins=bins)
