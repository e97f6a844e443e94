"""Stage 2: replace flagged pixels with the median of their clean neighbors.

Running a median over a *variable* number of clean values is awkward, so the
filter input generator (:func:`mfig`) keeps every window at 9 values: clean
positions pass through, flagged positions are overwritten with alternating
0/255 extremes. Padding with balanced extremes pushes them to the ends of
the sorted order, so the fixed rank-5 selection lands inside the clean
values. Two passes are taken, one starting the alternation at 0 and one at
255; when the number of flagged positions is odd the two medians straddle
the clean multiset's two middle values, and their rounded average equals the
median of the clean values alone (round-half-up mean of the two middle
values when their count is even).

:func:`denoise` is the whole-image reference pipeline: detect once, then
restore every flagged pixel from the *original* image and the precomputed
mask, so restored values never feed later restorations.
"""
from __future__ import annotations

import numpy as np

from .detector import DetectorConfig, detect
from .image import as_gray


def _check9(seq, what: str) -> list:
    vals = list(seq)
    if len(vals) != 9:
        raise ValueError(f"{what} must have exactly 9 entries, got {len(vals)}")
    return vals


def mfig(window, flags, trigger: int) -> list[int]:
    """Generate a fixed-size median input from a window and its noise flags.

    *window* and *flags* are 9-element sequences in row-major scan order
    (top-left first). Non-flagged positions pass through unchanged; flagged
    positions receive alternating extremes in scan order. With trigger 0
    the substitution sequence is 0, 255, 0, ...; with trigger 1 it is
    255, 0, 255, ...
    """
    vals = _check9(window, "window")
    noisy = _check9(flags, "flags")
    if trigger not in (0, 1):
        raise ValueError(f"trigger must be 0 or 1, got {trigger!r}")
    out = []
    k = 0
    for v, is_noisy in zip(vals, noisy):
        if is_noisy:
            out.append(255 if (k + trigger) & 1 else 0)
            k += 1
        else:
            v = int(v)
            if not 0 <= v <= 255:
                raise ValueError(f"intensity out of range [0, 255]: {v}")
            out.append(v)
    return out


def median9(values) -> int:
    """Median of 9 values: the 5th smallest of the multiset."""
    vals = _check9(values, "values")
    return int(sorted(int(v) for v in vals)[4])


def restore_pixel(window, flags) -> int:
    """Restored intensity for the center of a flagged window.

    Takes the medians of the trigger-0 and trigger-1 generated inputs and
    averages them with round-half-up. Whenever at least one position is
    clean, the result equals the median of the clean values (even-sized
    multisets take the rounded mean of the two middle values); with all 9
    positions flagged the two medians are 0 and 255 and the result is 128.
    """
    m0 = median9(mfig(window, flags, 0))
    m1 = median9(mfig(window, flags, 1))
    return (m0 + m1 + 1) // 2


def restore_windows(windows, flags) -> np.ndarray:
    """Vectorized :func:`restore_pixel` over a batch of windows.

    *windows* is an (n, 9) integer array, *flags* an (n, 9) boolean array,
    both in row-major scan order. Returns the n restored intensities as
    uint8. Agrees with the scalar path bit for bit.
    """
    w = np.asarray(windows, dtype=np.int16)
    f = np.asarray(flags, dtype=bool)
    if w.ndim != 2 or w.shape[1] != 9:
        raise ValueError(f"windows must have shape (n, 9), got {w.shape}")
    if f.shape != w.shape:
        raise ValueError(f"flags shape {f.shape} does not match windows shape {w.shape}")
    if w.size and (int(w.min()) < 0 or int(w.max()) > 255):
        raise ValueError("intensities out of range [0, 255]")
    # 0-based ordinal of each flagged position within its window, scan order.
    k = np.cumsum(f, axis=1) - 1
    alt0 = np.where(k & 1, np.int16(255), np.int16(0))
    t0 = np.where(f, alt0, w)
    t1 = np.where(f, np.int16(255) - alt0, w)
    m0 = np.sort(t0, axis=1)[:, 4]
    m1 = np.sort(t1, axis=1)[:, 4]
    return ((m0 + m1 + 1) // 2).astype(np.uint8)


def denoise(img, cfg: DetectorConfig | None = None) -> np.ndarray:
    """Detect-then-restore an image; the whole-image reference pipeline.

    Pixels the detector leaves unflagged are copied bit-identically; each
    flagged pixel is replaced by restoring its 3x3 window (values and flags
    both read with replicated borders from the original image and the
    precomputed mask).
    """
    cfg = cfg or DetectorConfig()
    a = as_gray(img)
    mask = detect(a, cfg)
    out = a.copy()
    if not mask.any():
        return out
    h, w = a.shape
    pv = np.pad(a, 1, mode="edge")
    pm = np.pad(mask, 1, mode="edge")
    ys, xs = np.nonzero(mask)
    win_v = np.stack([pv[ys + dy, xs + dx] for dy in range(3) for dx in range(3)], axis=1)
    win_f = np.stack([pm[ys + dy, xs + dx] for dy in range(3) for dx in range(3)], axis=1)
    out[ys, xs] = restore_windows(win_v, win_f)
    return out
