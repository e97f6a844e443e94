"""PGM codec, bit-exact and dependency-free.

Binary P5 is the canonical output format; ASCII P2 is accepted on read.
maxval is fixed at 255 (8-bit). Header comments (``#`` to end of line) are
skipped. Decode errors report the byte offset at which parsing failed.
"""
from __future__ import annotations

import os

import numpy as np

from .image import as_gray

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmFormatError(ValueError):
    """Malformed PGM input; carries the byte offset of the defect."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"{message} (byte {offset})")


class _Scanner:
    """Tokenizer over a PGM header: tracks position, skips whitespace/comments."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_separators(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if b in _WHITESPACE:
                self.pos += 1
            elif b == ord("#"):
                nl = data.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            else:
                return

    def token(self, what: str) -> tuple[bytes, int]:
        """Next whitespace-delimited token and the offset where it starts."""
        self._skip_separators()
        if self.pos >= len(self.data):
            raise PgmFormatError(len(self.data), f"unexpected end of data, expected {what}")
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos] not in _WHITESPACE and data[self.pos] != ord("#"):
            self.pos += 1
        return data[start:self.pos], start

    def integer(self, what: str) -> tuple[int, int]:
        tok, off = self.token(what)
        if not tok.isdigit():
            raise PgmFormatError(off, f"expected {what}, got {tok!r}")
        return int(tok), off


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a P5 (binary) or P2 (ASCII) graymap into a uint8 array.

    Pixel values are preserved exactly; dimensions come from the header.
    Raises :class:`PgmFormatError` on malformed headers, maxval other than
    255, or a truncated payload.
    """
    data = bytes(data)
    sc = _Scanner(data)
    magic, off = sc.token("magic number")
    if magic not in (b"P5", b"P2"):
        raise PgmFormatError(off, f"not a PGM stream, expected P5 or P2 magic, got {magic!r}")
    width, woff = sc.integer("width")
    height, hoff = sc.integer("height")
    if width < 1:
        raise PgmFormatError(woff, f"width must be positive, got {width}")
    if height < 1:
        raise PgmFormatError(hoff, f"height must be positive, got {height}")
    maxval, moff = sc.integer("maxval")
    if maxval != 255:
        raise PgmFormatError(moff, f"unsupported maxval {maxval}, only 255 is accepted")
    count = width * height

    if magic == b"P5":
        if sc.pos >= len(data) or data[sc.pos] not in _WHITESPACE:
            raise PgmFormatError(sc.pos, "expected a single whitespace byte after maxval")
        start = sc.pos + 1
        payload = data[start:start + count]
        if len(payload) < count:
            raise PgmFormatError(
                len(data),
                f"truncated pixel payload, expected {count} bytes, found {len(payload)}",
            )
        flat = np.frombuffer(payload, dtype=np.uint8, count=count)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            v, voff = sc.integer("pixel value")
            if v > 255:
                raise PgmFormatError(voff, f"sample value {v} exceeds maxval 255")
            values[i] = v
        flat = values

    return flat.reshape(height, width).copy()


def write_pgm(img) -> bytes:
    """Encode a gray image as a binary (P5) graymap.

    Round-trip identity holds: ``read_pgm(write_pgm(img))`` equals *img*
    bit for bit.
    """
    a = as_gray(img)
    h, w = a.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + a.tobytes()


def load_pgm(path: str | os.PathLike) -> np.ndarray:
    """Read a PGM file from disk."""
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path: str | os.PathLike, img) -> None:
    """Write a gray image to disk as binary PGM."""
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))
