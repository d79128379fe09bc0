"""Image kernels: saturating intensity shift, color-space moves, crop/resize.

All functions are pure: they never mutate their input array and are safe to
call concurrently. Images are ``(H, W, 3)`` uint8 arrays throughout; a buffer
produced by :func:`rgb_to_yuv` has the same shape and dtype with planes
ordered Y, U, V.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .exceptions import CropExceedsHeightError
from .validation import INTENSITY_MAX, INTENSITY_MIN, check_image, check_shift, check_space

# Full-range BT.601 luma/chroma weights with the chroma planes offset by 128,
# i.e. the JPEG YCbCr convention. Forward rows produce (Y, U, V) from (R, G, B).
_RGB_TO_YUV = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_YUV_TO_RGB = np.array(
    [
        [1.0, 0.0, 1.402],
        [1.0, -0.344136, -0.714136],
        [1.0, 1.772, 0.0],
    ]
)
_CHROMA_OFFSET = np.array([0.0, 128.0, 128.0])


def shift_image(image: np.ndarray, shift: int) -> np.ndarray:
    """Add ``shift`` to every channel of every pixel, saturating at 0 and 255.

    Saturation is the defined behavior, not an error: a pixel at 100 shifted
    by -120 lands on 0, one at 170 shifted by +100 lands on 255. The input
    is never modified.
    """
    image = check_image(image)
    shift = check_shift(shift)
    if shift == 0:
        return image.copy()
    widened = image.astype(np.int16) + shift
    return np.clip(widened, INTENSITY_MIN, INTENSITY_MAX).astype(np.uint8)


def rgb_to_yuv(image: np.ndarray) -> np.ndarray:
    """Convert an RGB image to a YUV buffer of the same shape and dtype.

    Uses full-range BT.601 with offset-128 chroma, so an achromatic pixel
    (v, v, v) maps to (v, 128, 128). Quantizing back to uint8 makes the
    conversion lossy by up to a couple of intensity levels per round trip.
    """
    image = check_image(image)
    yuv = image.astype(np.float64) @ _RGB_TO_YUV.T + _CHROMA_OFFSET
    return _quantize(yuv)


def yuv_to_rgb(buffer: np.ndarray) -> np.ndarray:
    """Invert :func:`rgb_to_yuv`, quantizing back to uint8."""
    buffer = check_image(buffer, "buffer")
    rgb = (buffer.astype(np.float64) - _CHROMA_OFFSET) @ _YUV_TO_RGB.T
    return _quantize(rgb)


def _quantize(values: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(values), INTENSITY_MIN, INTENSITY_MAX).astype(np.uint8)


def to_space(image: np.ndarray, space: str) -> np.ndarray:
    """Return the image in the requested space: unchanged for RGB, converted for YUV."""
    return rgb_to_yuv(image) if check_space(space) == "yuv" else check_image(image)


def channel_mean(image: np.ndarray) -> float:
    """Arithmetic mean over all width x height x 3 intensity samples."""
    return float(check_image(image).mean())


@dataclass(frozen=True)
class PreprocessSpec:
    """Crop/resize/color-space recipe for camera frames.

    Defaults follow the usual self-driving pipeline: drop 60 sky rows and 25
    hood rows, then resample to 200x66. The crop amounts are explicit rather
    than assumed because their feasibility depends on the capture height;
    :func:`preprocess` rejects any spec that would consume the whole frame.
    """

    crop_top_rows: int = 60
    crop_bottom_rows: int = 25
    target_width: int = 200
    target_height: int = 66
    output_space: str = "rgb"

    def validate(self, input_height: int) -> None:
        if self.crop_top_rows < 0 or self.crop_bottom_rows < 0:
            raise ValueError("crop row counts must be non-negative")
        if self.target_width < 1 or self.target_height < 1:
            raise ValueError("target dimensions must be at least 1x1")
        if self.output_space.lower() not in ("rgb", "yuv"):
            raise ValueError(f"output_space must be 'rgb' or 'yuv', got {self.output_space!r}")
        if self.crop_top_rows + self.crop_bottom_rows >= input_height:
            raise CropExceedsHeightError(
                f"cropping {self.crop_top_rows}+{self.crop_bottom_rows} rows "
                f"consumes the whole {input_height}-row image"
            )


def preprocess(image: np.ndarray, spec: PreprocessSpec | None = None) -> np.ndarray:
    """Crop rows top/bottom, resize bilinearly, then optionally move to YUV.

    Returns a ``(spec.target_height, spec.target_width, 3)`` uint8 array.
    With a zero crop and target equal to the input size the RGB output is
    bit-identical to the input.
    """
    image = check_image(image)
    spec = spec or PreprocessSpec()
    height = image.shape[0]
    spec.validate(height)

    cropped = image[spec.crop_top_rows : height - spec.crop_bottom_rows]
    if cropped.shape[0] == spec.target_height and cropped.shape[1] == spec.target_width:
        resized = cropped.copy()
    else:
        pil = Image.fromarray(cropped, mode="RGB")
        pil = pil.resize((spec.target_width, spec.target_height), Image.BILINEAR)
        resized = np.asarray(pil)
    if spec.output_space.lower() == "yuv":
        return rgb_to_yuv(resized)
    return resized


def load_image(path: str | Path) -> np.ndarray:
    """Read a JPEG/PNG file as an RGB image array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def save_image(image: np.ndarray, path: str | Path) -> None:
    """Write an image array to disk; the format follows the file extension."""
    Image.fromarray(check_image(image), mode="RGB").save(path)
