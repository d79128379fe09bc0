"""Ingestion of simulator drive logs: numbered camera frames plus JSON records.

A dataset directory holds one image per frame (``{index}_cam-image_array_.jpg``)
and one JSON record per frame (``record_{index}.json``) carrying the steering
and throttle values.  Both filename patterns and the JSON key names are
configurable, since logging conventions vary between simulator builds.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .exceptions import (
    CoverageGapError,
    MalformedRecordError,
    MissingRecordError,
)


@dataclass(frozen=True)
class NamingConfig:
    """Filename patterns and JSON keys that map a directory onto frames.

    ``image_suffix`` follows the frame index in image filenames;
    ``record_template`` must contain ``{index}``.
    """

    image_suffix: str = "_cam-image_array_.jpg"
    record_template: str = "record_{index}.json"
    steering_key: str = "steering"
    throttle_key: str = "throttle"

    @classmethod
    def from_file(cls, path: str | Path) -> "NamingConfig":
        """Load overrides from a JSON mapping; absent keys keep defaults."""
        overrides = json.loads(Path(path).read_text())
        unknown = set(overrides) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise MalformedRecordError(f"unknown naming-config keys: {sorted(unknown)}")
        return cls(**overrides)

    def record_name(self, index: int) -> str:
        return self.record_template.format(index=index)

    def image_index(self, filename: str) -> int | None:
        """Frame index from an image filename, or None if it doesn't match."""
        match = re.fullmatch(r"(\d+)" + re.escape(self.image_suffix), filename)
        return int(match.group(1)) if match else None


@dataclass(frozen=True)
class DriveRecord:
    """One logged frame: the image on disk plus its control values."""

    frame_index: int
    image_path: Path
    steering: float
    throttle: float


def load_dataset(directory: str | Path, naming: NamingConfig | None = None) -> list[DriveRecord]:
    """Scan a drive-log directory into records sorted by frame index.

    Every image must have its JSON record and vice versa; an unpaired file
    raises :class:`MissingRecordError` naming the frame.  Records whose JSON
    cannot be parsed or lacks the mapped keys raise
    :class:`MalformedRecordError`.
    """
    naming = naming or NamingConfig()
    directory = Path(directory)
    images: dict[int, Path] = {}
    for entry in directory.iterdir():
        index = naming.image_index(entry.name)
        if index is not None:
            images[index] = entry

    records = []
    for index in sorted(images):
        record_path = directory / naming.record_name(index)
        if not record_path.exists():
            raise MissingRecordError(f"frame {index}: image has no record file {record_path.name}")
        try:
            payload = json.loads(record_path.read_text())
        except json.JSONDecodeError as exc:
            raise MalformedRecordError(f"frame {index}: invalid JSON in {record_path.name}: {exc}")
        try:
            steering = float(payload[naming.steering_key])
            throttle = float(payload[naming.throttle_key])
        except (KeyError, TypeError, ValueError):
            raise MalformedRecordError(
                f"frame {index}: record {record_path.name} lacks usable "
                f"{naming.steering_key!r}/{naming.throttle_key!r} values"
            )
        records.append(
            DriveRecord(
                frame_index=index, image_path=images[index], steering=steering, throttle=throttle
            )
        )

    # The reverse direction: record files whose image is missing.
    pattern = re.escape(naming.record_template).replace(r"\{index\}", r"(\d+)")
    for entry in directory.iterdir():
        match = re.fullmatch(pattern, entry.name)
        if match and int(match.group(1)) not in images:
            raise MissingRecordError(f"frame {match.group(1)}: record has no image file")
    return records


def read_predictions_csv(path: str | Path) -> dict[int, float]:
    """Load model predictions keyed by frame index.

    Expects a header row ``frame,prediction``.
    """
    predictions: dict[int, float] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            predictions[int(row["frame"])] = float(row["prediction"])
    return predictions


def match_predictions(
    records: list[DriveRecord], predictions: dict[int, float]
) -> tuple[list[float], list[float]]:
    """Align ground-truth steering with predictions, frame by frame.

    Returns (actual, predicted) in dataset order; any dataset frame lacking a
    prediction raises :class:`CoverageGapError` listing the gaps.
    """
    missing = [r.frame_index for r in records if r.frame_index not in predictions]
    if missing:
        raise CoverageGapError(missing)
    return (
        [r.steering for r in records],
        [predictions[r.frame_index] for r in records],
    )
