"""Input validation helpers shared by the kernels and the estimators.

Images are plain ``numpy`` arrays of shape ``(height, width, 3)`` and dtype
``uint8``; there is no wrapper class. These helpers coerce compatible inputs
(nested lists, integer arrays in range) to that canonical form and raise
``ValueError``/``TypeError`` with actionable messages otherwise, in the same
spirit as scikit-learn's ``check_array``.
"""

from __future__ import annotations

import numpy as np

CHANNELS = 3
INTENSITY_MIN = 0
INTENSITY_MAX = 255
#: Number of representable 8-bit intensity values, and therefore bin count.
INTENSITY_LEVELS = 256


def check_image(image, name: str = "image") -> np.ndarray:
    """Validate and canonicalize one image to a ``(H, W, 3)`` uint8 array.

    Accepts any array-like holding integers in [0, 255]. Returns the input
    unchanged (no copy) when it is already canonical.
    """
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != CHANNELS:
        raise ValueError(
            f"{name} must have shape (height, width, {CHANNELS}), got {arr.shape}"
        )
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one pixel, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"{name} must hold integer intensities, got dtype {arr.dtype}")
    if arr.min() < INTENSITY_MIN or arr.max() > INTENSITY_MAX:
        raise ValueError(
            f"{name} intensities must lie in [{INTENSITY_MIN}, {INTENSITY_MAX}]"
        )
    return arr.astype(np.uint8)


def check_image_batch(images, name: str = "images") -> list[np.ndarray]:
    """Validate a sequence of images, returning a list of canonical arrays.

    A single ``(H, W, 3)`` array is treated as a batch of one; a 4-d array
    as a stack of images.
    """
    if isinstance(images, np.ndarray) and images.ndim == 3:
        return [check_image(images, name)]
    return [check_image(img, f"{name}[{i}]") for i, img in enumerate(images)]


def check_shift(shift, name: str = "shift") -> int:
    """Validate a signed intensity shift, returning it as a plain int.

    Shifts beyond +/-255 cannot do more than full saturation already does,
    so they are rejected as almost certainly a unit mistake.
    """
    value = int(shift)
    if value != shift:
        raise ValueError(f"{name} must be an integer, got {shift!r}")
    if not -INTENSITY_MAX <= value <= INTENSITY_MAX:
        raise ValueError(f"{name} must lie in [-255, 255], got {value}")
    return value


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "images") -> None:
    if a.shape != b.shape:
        raise ValueError(f"{what} must share one geometry: {a.shape} vs {b.shape}")


def check_space(space: str) -> str:
    """Validate a color-space selector, normalizing case."""
    normalized = str(space).lower()
    if normalized not in ("rgb", "yuv"):
        raise ValueError(f"space must be 'rgb' or 'yuv', got {space!r}")
    return normalized


def check_series(values, name: str = "series") -> np.ndarray:
    """Validate a 1-d series of finite reals, returned as float64."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr
