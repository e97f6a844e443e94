"""Shared raster conventions: 8-bit gray images, pixel labels, masks, borders.

Images are plain 2-D numpy arrays of dtype uint8, shape (height, width).
Label images use the same shape with values from :class:`Label`; noise masks
are boolean arrays of the same shape (True = noisy).
"""
from __future__ import annotations

import enum

import numpy as np

# Type aliases for readability in signatures; all three are 2-D ndarrays.
GrayImage = np.ndarray
LabelImage = np.ndarray
NoiseMask = np.ndarray


class Label(enum.IntEnum):
    """Three-way pixel classification by intensity."""

    ZERO = 0   # intensity exactly 0
    FULL = 1   # intensity exactly 255
    OTHER = 2  # any other intensity


class BorderPolicy(enum.Enum):
    """How windows behave past the image edge.

    REPLICATE clamps out-of-bounds coordinates to the nearest valid pixel,
    so windows never see values that do not exist in the image. It is the
    only supported mode; the enum exists so callers can state the policy
    explicitly.
    """

    REPLICATE = "replicate"


def as_gray(img) -> np.ndarray:
    """Validate *img* as an 8-bit grayscale raster and return it as uint8.

    Accepts any 2-D integer array (or nested sequence) with values in
    [0, 255]. Raises ValueError otherwise.
    """
    a = np.asarray(img)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale array, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"image dimensions must be positive, got {a.shape}")
    if a.dtype == np.uint8:
        return a
    if not np.issubdtype(a.dtype, np.integer):
        raise ValueError(f"expected integer intensities, got dtype {a.dtype}")
    if int(a.min()) < 0 or int(a.max()) > 255:
        raise ValueError("intensities out of range [0, 255]")
    return a.astype(np.uint8)


def window3(img, x: int, y: int, policy: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    """Return the 3x3 neighborhood of (x, y) as 9 values in row-major order.

    *x* is the column index, *y* the row index; the center pixel lands at
    position 4 of the returned array. Out-of-bounds neighbors are resolved
    by clamping to the nearest valid coordinate, so the result always has
    exactly 9 entries drawn from the image. Works on gray images, label
    images, and boolean masks alike (dtype is preserved).
    """
    a = np.asarray(img)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    h, w = a.shape
    if not (0 <= x < w and 0 <= y < h):
        raise ValueError(f"coordinate (x={x}, y={y}) outside {w}x{h} image")
    if policy is not BorderPolicy.REPLICATE:
        raise ValueError(f"unsupported border policy: {policy!r}")
    ys = np.clip((y - 1, y, y + 1), 0, h - 1)
    xs = np.clip((x - 1, x, x + 1), 0, w - 1)
    return a[np.repeat(ys, 3), np.tile(xs, 3)]


def mask_to_gray(mask) -> np.ndarray:
    """Render a boolean mask as a 0/255 uint8 image (255 = flagged)."""
    m = np.asarray(mask)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {m.shape}")
    return np.where(m.astype(bool), np.uint8(255), np.uint8(0))
