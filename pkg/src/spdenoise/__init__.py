"""Salt-and-pepper impulse noise removal for 8-bit grayscale images.

Two-stage pipeline: label-similarity detection of noisy extremes, then
median restoration of only the flagged pixels. Comes in a whole-image
reference form (:func:`denoise`) and a bounded-memory raster-streaming form
(:func:`stream_denoise`) that produce bit-identical output, plus a
reproducible noise-injection and PSNR evaluation harness.
"""
from .detector import DetectorConfig, detect, inspect_pixel, label_image, label_pixel
from .image import (
    BorderPolicy,
    GrayImage,
    Label,
    LabelImage,
    NoiseMask,
    as_gray,
    mask_to_gray,
    window3,
)
from .noiselab import (
    AggregateRow,
    EvalReport,
    NoiseSpec,
    ReportRow,
    Xorshift64Star,
    default_methods,
    derive_seed,
    inject,
    median_filter,
    mse,
    psnr,
    splitmix64,
    sweep,
)
from .pgm import PgmFormatError, load_pgm, read_pgm, save_pgm, write_pgm
from .phantoms import desk_corpus, make_phantom
from .restorer import denoise, median9, mfig, restore_pixel, restore_windows
from .streaming import StreamStats, StreamTruncatedError, StreamingDenoiser, stream_denoise

__version__ = "0.1.0"

__all__ = [
    "AggregateRow",
    "BorderPolicy",
    "DetectorConfig",
    "EvalReport",
    "GrayImage",
    "Label",
    "LabelImage",
    "NoiseMask",
    "NoiseSpec",
    "PgmFormatError",
    "ReportRow",
    "StreamStats",
    "StreamTruncatedError",
    "StreamingDenoiser",
    "Xorshift64Star",
    "as_gray",
    "default_methods",
    "denoise",
    "derive_seed",
    "desk_corpus",
    "detect",
    "inject",
    "inspect_pixel",
    "label_image",
    "label_pixel",
    "load_pgm",
    "make_phantom",
    "mask_to_gray",
    "median9",
    "median_filter",
    "mfig",
    "mse",
    "psnr",
    "read_pgm",
    "restore_pixel",
    "restore_windows",
    "save_pgm",
    "splitmix64",
    "stream_denoise",
    "sweep",
    "window3",
    "write_pgm",
]
