"""Bounded-memory raster-order pipeline, bit-identical to :func:`denoise`.

The engine consumes one pixel at a time in raster order and emits restored
pixels in raster order, holding only line buffers between the stages:

* labeler: each arriving intensity is classified ZERO/FULL/OTHER into a
  rotating set of 3 label rows;
* similarity inspection: once the label window of a pixel is complete
  (one row plus one pixel behind the input in the interior), its noise
  flag is decided and recorded;
* restoration and placement: once the flag window of a pixel is complete
  (another row plus one pixel later), the pixel is either passed through
  or replaced by the dual-median restoration of its 3x3 window.

Noise flags are recorded in place in the value rows (a flagged pixel's slot
holds a sentinel that also encodes its original 0 or 255), so the retained
state is 4 value rows plus 3 label rows - 7 rows of ``width`` slots, never a
full frame. In the interior the first output pixel becomes available exactly
2 rows + 2 pixels after the first input. Borders are synthesized by clamped
reads of the buffered edge rows, which also drains the pipeline after the
last pixel without re-reading the source.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .detector import DetectorConfig
from .image import as_gray

# In-row sentinels marking flagged pixels while preserving their value.
_FLAGGED_ZERO = -1
_FLAGGED_FULL = -2


class StreamTruncatedError(ValueError):
    """The pixel source ended before width*height pixels were delivered."""

    def __init__(self, received: int, expected: int):
        self.received = received
        self.expected = expected
        super().__init__(f"pixel stream ended after {received} of {expected} pixels")


@dataclass(frozen=True)
class StreamStats:
    """Dataflow accounting for one streaming run."""

    pixels_in: int
    pixels_out: int
    latency_pixels: int
    peak_buffer_bytes: int

    def to_text(self) -> str:
        """Flat key=value block, one line per field."""
        return (
            f"pixels_in={self.pixels_in}\n"
            f"pixels_out={self.pixels_out}\n"
            f"latency_pixels={self.latency_pixels}\n"
            f"peak_buffer_bytes={self.peak_buffer_bytes}\n"
        )


class StreamingDenoiser:
    """Push-style single-pass denoiser over a raster pixel stream.

    ``push(value)`` accepts the next intensity and returns whatever output
    pixels became ready (usually one in steady state, bursts near the end
    of rows and of the image). ``finish()`` must be called after the last
    pixel; it raises :class:`StreamTruncatedError` if the stream is short.
    """

    def __init__(self, width: int, height: int, cfg: DetectorConfig | None = None):
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be positive, got {width}x{height}")
        cfg = cfg or DetectorConfig()
        self._w = width
        self._h = height
        self._t1 = cfg.t1
        self._total = width * height
        # Rotating line buffers: value row i lives in slot i % 4 and label
        # row i in slot i % 3; a slot is only recycled once every window
        # that reads the old row has been computed.
        self._vals = [[0] * width for _ in range(4)]
        self._labs = [[2] * width for _ in range(3)]
        self._pushed = 0
        self._flags_done = 0
        self._outs_done = 0

    @property
    def stats(self) -> StreamStats:
        w, h = self._w, self._h
        return StreamStats(
            pixels_in=self._pushed,
            pixels_out=self._outs_done,
            latency_pixels=min(2, h - 1) * w + min(2, w - 1),
            peak_buffer_bytes=7 * w,
        )

    def push(self, value) -> list[int]:
        """Feed the next raster-order intensity; return newly ready outputs."""
        if self._pushed >= self._total:
            raise ValueError(f"all {self._total} pixels already pushed")
        v = int(value)
        if not 0 <= v <= 255:
            raise ValueError(f"intensity out of range [0, 255]: {v}")
        w = self._w
        i, j = divmod(self._pushed, w)
        self._vals[i & 3][j] = v
        self._labs[i % 3][j] = 0 if v == 0 else (1 if v == 255 else 2)
        self._pushed += 1
        return self._advance()

    def finish(self) -> list[int]:
        """Validate completion; any residual outputs were already emitted."""
        if self._pushed < self._total:
            raise StreamTruncatedError(self._pushed, self._total)
        return []

    def _advance(self) -> list[int]:
        w, t1 = self._w, self._t1
        hm1, wm1 = self._h - 1, self._w - 1
        vals, labs = self._vals, self._labs
        total, pushed = self._total, self._pushed
        out: list[int] = []
        append = out.append

        # Similarity inspection: flag every pixel whose label window is
        # complete, in raster order. Flags only ever target 0/255 pixels.
        fd = self._flags_done
        while fd < total:
            rho, xi = divmod(fd, w)
            dep_row = rho + 1 if rho < hm1 else hm1
            dep_col = xi + 1 if xi < wm1 else wm1
            if dep_row * w + dep_col >= pushed:
                break
            lc = labs[rho % 3]
            c = lc[xi]
            if c != 2:
                ym = rho - 1 if rho > 0 else 0
                yp = rho + 1 if rho < hm1 else hm1
                xm = xi - 1 if xi > 0 else 0
                xp = xi + 1 if xi < wm1 else wm1
                la = labs[ym % 3]
                lb = labs[yp % 3]
                d = (
                    (la[xm] != c) + (la[xi] != c) + (la[xp] != c)
                    + (lc[xm] != c) + (lc[xp] != c)
                    + (lb[xm] != c) + (lb[xi] != c) + (lb[xp] != c)
                )
                if d > t1:
                    vals[rho & 3][xi] = _FLAGGED_ZERO if c == 0 else _FLAGGED_FULL
            fd += 1
        self._flags_done = fd

        # Restoration + placement: emit every pixel whose flag window is
        # complete, in raster order.
        od = self._outs_done
        while od < total:
            r, x = divmod(od, w)
            dep_row = r + 1 if r < hm1 else hm1
            dep_col = x + 1 if x < wm1 else wm1
            if dep_row * w + dep_col >= fd:
                break
            vc = vals[r & 3]
            enc = vc[x]
            if enc >= 0:
                append(enc)
            else:
                ym = r - 1 if r > 0 else 0
                yp = r + 1 if r < hm1 else hm1
                xm = x - 1 if x > 0 else 0
                xp = x + 1 if x < wm1 else wm1
                va = vals[ym & 3]
                vb = vals[yp & 3]
                cells = (
                    va[xm], va[x], va[xp],
                    vc[xm], enc, vc[xp],
                    vb[xm], vb[x], vb[xp],
                )
                gen0: list[int] = []
                gen1: list[int] = []
                k = 0
                for e in cells:
                    if e >= 0:
                        gen0.append(e)
                        gen1.append(e)
                    elif k & 1:
                        gen0.append(255)
                        gen1.append(0)
                        k += 1
                    else:
                        gen0.append(0)
                        gen1.append(255)
                        k += 1
                m0 = sorted(gen0)[4]
                m1 = sorted(gen1)[4]
                append((m0 + m1 + 1) >> 1)
            od += 1
        self._outs_done = od
        return out


def stream_denoise(
    source: Iterable | np.ndarray,
    width: int | None = None,
    height: int | None = None,
    cfg: DetectorConfig | None = None,
) -> tuple[np.ndarray, StreamStats]:
    """Denoise a raster-order pixel stream; returns (image, stats).

    *source* is either a 2-D array (dimensions may then be omitted) or any
    iterable yielding exactly ``width * height`` intensities in raster
    order. Each source pixel is read exactly once. The assembled output is
    bit-identical to :func:`spdenoise.restorer.denoise` on the same image.

    Raises :class:`StreamTruncatedError` if the source runs dry early.
    """
    if isinstance(source, np.ndarray) and source.ndim == 2:
        a = as_gray(source)
        src_h, src_w = a.shape
        if width is None:
            width = src_w
        if height is None:
            height = src_h
        if (width, height) != (src_w, src_h):
            raise ValueError(
                f"declared {width}x{height} does not match array {src_w}x{src_h}"
            )
        values: Iterator = iter(a.ravel().tolist())
    else:
        if width is None or height is None:
            raise ValueError("width and height are required for iterable sources")
        values = iter(source)

    engine = StreamingDenoiser(width, height, cfg)
    total = width * height
    out = np.empty(total, dtype=np.uint8)
    n = 0
    for received in range(total):
        try:
            v = next(values)
        except StopIteration:
            raise StreamTruncatedError(received, total) from None
        for o in engine.push(v):
            out[n] = o
            n += 1
    engine.finish()
    return out.reshape(height, width), engine.stats
