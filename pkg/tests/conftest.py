"""Shared fixtures: synthetic images and drive-log directories."""

import json

import numpy as np
import pytest

from driftgate import save_image


def make_uniform_block(low: int = 64, length: int = 128) -> np.ndarray:
    """A 1 x length image holding each gray level in [low, low+length) once.

    Every occupied histogram bin has count 3 (one per channel), so the
    histogram is a flat contiguous block and the intersection with a shifted
    copy is exactly affine in the shift while nothing saturates.
    """
    values = np.arange(low, low + length, dtype=np.uint8)
    return values.reshape(1, length, 1).repeat(3, axis=2)


@pytest.fixture
def uniform_block() -> np.ndarray:
    return make_uniform_block()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


def write_drive_log(
    directory,
    images,
    steering=None,
    throttle=0.3,
    image_suffix="_cam-image_array_.jpg",
    record_template="record_{index}.json",
):
    """Materialize images + JSON records as a drive-log directory."""
    directory.mkdir(parents=True, exist_ok=True)
    for index, image in enumerate(images):
        save_image(image, directory / f"{index}{image_suffix}")
        record = {
            "steering": float(steering[index]) if steering is not None else 0.0,
            "throttle": float(throttle),
        }
        (directory / record_template.format(index=index)).write_text(json.dumps(record))
    return directory


@pytest.fixture
def drive_dir(tmp_path, rng):
    """A four-frame drive log with random interior frames and known steering."""
    images = [
        rng.integers(30, 226, size=(24, 32, 3), dtype=np.uint8) for _ in range(4)
    ]
    steering = [0.5, -0.25, 0.125, 1.0]
    return write_drive_log(tmp_path / "driv", images, steering)
