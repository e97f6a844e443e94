"""Noise-injection and evaluation harness.

Provides reproducible salt-and-pepper corruption, PSNR/MSE metrics, plain
median-filter baselines, and density sweeps that compare named denoisers
over an image corpus and emit a CSV report.

Reproducibility contract: injection draws one 64-bit xorshift64* word per
pixel in raster order, from a state seeded with splitmix64. The corruption
decision uses bits 40..63 of the word (corrupt iff the 24-bit field is below
``int(density * 2**24)``) and the salt/pepper choice uses bits 16..39
(salt iff below ``int(salt_ratio * 2**24)``). Identical (image, spec) pairs
therefore produce identical noise in any implementation of this scheme.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .detector import DetectorConfig
from .image import as_gray
from .restorer import denoise

_M64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_PEAK_SQ = 255.0 * 255.0  # 65025, the PSNR numerator for 8-bit data


def splitmix64(z: int) -> int:
    """One splitmix64 output for counter/seed value *z* (64-bit wrap)."""
    z = (z + _SPLITMIX_GAMMA) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


class Xorshift64Star:
    """Minimal xorshift64* stream; state is seeded through splitmix64."""

    def __init__(self, seed: int):
        state = splitmix64(seed & _M64)
        self._state = state if state else _SPLITMIX_GAMMA

    def next(self) -> int:
        s = self._state
        s ^= s >> 12
        s ^= (s << 25) & _M64
        s ^= s >> 27
        self._state = s
        return (s * 0x2545F4914F6CDD1D) & _M64


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed by chained splitmix64 mixing.

    Used to give every (image, density) sweep cell its own independent
    noise stream while keeping the whole sweep a pure function of the
    master seed.
    """
    acc = 0
    for p in parts:
        acc = splitmix64((acc ^ (int(p) & _M64)) & _M64)
    return acc


@dataclass(frozen=True)
class NoiseSpec:
    """Salt-and-pepper corruption parameters.

    Each pixel is independently corrupted with probability ``density``;
    corrupted pixels become 255 with probability ``salt_ratio`` and 0
    otherwise. ``seed`` fixes the noise pattern exactly.
    """

    density: float
    salt_ratio: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= float(self.density) <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")
        if not 0.0 <= float(self.salt_ratio) <= 1.0:
            raise ValueError(f"salt_ratio must be in [0, 1], got {self.salt_ratio}")


def inject(img, spec: NoiseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Corrupt an image per *spec*; returns (noisy image, ground-truth mask).

    The mask marks exactly the corrupted pixels. Corruption may hit pixels
    that were already 0 or 255; no re-draw happens. Pure function of
    (img, spec).
    """
    a = as_gray(img)
    rng = Xorshift64Star(spec.seed)
    corrupt_below = int(float(spec.density) * 16777216.0)
    salt_below = int(float(spec.salt_ratio) * 16777216.0)
    out = a.copy()
    mask = np.zeros(a.shape, dtype=bool)
    flat = out.ravel()
    mflat = mask.ravel()
    nxt = rng.next
    for i in range(flat.size):
        u = nxt()
        if (u >> 40) < corrupt_below:
            mflat[i] = True
            flat[i] = 255 if ((u >> 16) & 0xFFFFFF) < salt_below else 0
    return out, mask


def mse(a, b) -> float:
    """Mean squared intensity difference between two equal-size images."""
    x = as_gray(a)
    y = as_gray(b)
    if x.shape != y.shape:
        raise ValueError(f"image dimensions differ: {x.shape} vs {y.shape}")
    d = x.astype(np.int32) - y.astype(np.int32)
    return float(np.mean(d * d))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; identical images give +infinity."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(_PEAK_SQ / m)


def median_filter(img, k: int) -> np.ndarray:
    """Plain k x k median baseline (k = 3 or 5), replicate-padded.

    Every output pixel is the multiset median of its k*k neighborhood,
    i.e. the value of rank (k*k + 1) / 2.
    """
    if k not in (3, 5):
        raise ValueError(f"window side must be 3 or 5, got {k}")
    a = as_gray(img)
    h, w = a.shape
    pad = k // 2
    p = np.pad(a, pad, mode="edge")
    stack = np.stack(
        [p[dy:dy + h, dx:dx + w] for dy in range(k) for dx in range(k)], axis=-1
    )
    stack.sort(axis=-1)
    return stack[..., (k * k) // 2].copy()


@dataclass(frozen=True)
class ReportRow:
    """PSNR/MSE of one (image, density, method) evaluation."""

    image: str
    density: float
    method: str
    psnr_db: float
    mse: float


@dataclass(frozen=True)
class AggregateRow:
    """Mean PSNR of one method at one density, across the corpus."""

    density: float
    method: str
    mean_psnr_db: float


def _csv_num(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.6f}"


@dataclass
class EvalReport:
    """Sweep results: per-image rows plus per-(density, method) means."""

    rows: list[ReportRow] = field(default_factory=list)
    aggregates: list[AggregateRow] = field(default_factory=list)

    def mean_psnr(self, density: float, method: str) -> float:
        for agg in self.aggregates:
            if agg.method == method and math.isclose(agg.density, density):
                return agg.mean_psnr_db
        raise KeyError(f"no aggregate for density={density}, method={method!r}")

    def to_csv(self) -> str:
        """Two-section CSV; densities are percentages with one decimal."""
        lines = ["image,density,method,psnr_db,mse"]
        for r in self.rows:
            lines.append(
                f"{r.image},{r.density * 100.0:.1f},{r.method},"
                f"{_csv_num(r.psnr_db)},{_csv_num(r.mse)}"
            )
        lines.append("density,method,mean_psnr_db")
        for a in self.aggregates:
            lines.append(f"{a.density * 100.0:.1f},{a.method},{_csv_num(a.mean_psnr_db)}")
        return "\n".join(lines) + "\n"


def default_methods(cfg: DetectorConfig | None = None) -> dict[str, Callable[[np.ndarray], np.ndarray]]:
    """The three standard denoisers: median3, median5, proposed."""
    cfg = cfg or DetectorConfig()
    return {
        "median3": lambda img: median_filter(img, 3),
        "median5": lambda img: median_filter(img, 5),
        "proposed": lambda img: denoise(img, cfg),
    }


def sweep(
    corpus,
    densities: Sequence[float],
    methods: Sequence[str] | Mapping[str, Callable] | None = None,
    seed: int = 0,
    cfg: DetectorConfig | None = None,
) -> EvalReport:
    """Run the full evaluation grid and return an :class:`EvalReport`.

    *corpus* is a mapping of image id to image (iterated in sorted-id
    order) or a sequence of ``(id, image)`` pairs (iterated as given).
    For every (image, density) cell, noise is injected with the seed
    ``derive_seed(seed, image_index, density_index)``, every method
    denoises the same corrupted image, and PSNR/MSE are recorded against
    the clean original. Rows and aggregates come out in deterministic
    order: density-major, then image, then method.
    """
    if isinstance(corpus, Mapping):
        images = sorted(corpus.items())
    else:
        images = [(str(name), img) for name, img in corpus]
    if not images:
        raise ValueError("corpus must contain at least one image")
    densities = list(densities)
    if not densities:
        raise ValueError("densities must contain at least one value")

    if methods is None:
        resolved = list(default_methods(cfg).items())
    elif isinstance(methods, Mapping):
        resolved = list(methods.items())
    else:
        registry = default_methods(cfg)
        resolved = []
        for name in methods:
            if name not in registry:
                raise ValueError(
                    f"unknown method {name!r}; known: {sorted(registry)}"
                )
            resolved.append((name, registry[name]))
    if not resolved:
        raise ValueError("methods must contain at least one entry")

    clean = [(name, as_gray(img)) for name, img in images]
    report = EvalReport()
    for di, density in enumerate(densities):
        per_method_psnr: dict[str, list[float]] = {name: [] for name, _ in resolved}
        for ii, (name, img) in enumerate(clean):
            cell_seed = derive_seed(seed, ii, di)
            noisy, _ = inject(img, NoiseSpec(density=density, seed=cell_seed))
            for mname, fn in resolved:
                restored = fn(noisy)
                cell_mse = mse(img, restored)
                cell_psnr = psnr(img, restored)
                report.rows.append(ReportRow(name, density, mname, cell_psnr, cell_mse))
                per_method_psnr[mname].append(cell_psnr)
        for mname, _ in resolved:
            values = per_method_psnr[mname]
            report.aggregates.append(
                AggregateRow(density, mname, sum(values) / len(values))
            )
    return report
