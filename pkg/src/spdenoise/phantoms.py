"""Deterministic synthetic test images: dark background, bright anatomy.

Real scan corpora cannot be redistributed here, so the bundled desk corpus
is generated: each phantom has a dim never-zero noise floor around a bright
elliptical body with soft radial falloff and fine smooth texture, darker
inner cavities, bright nodules, sometimes a small saturated core, and
sometimes true-black corners outside a circular field of view. The images
are pure functions of (seed, size).

Exact zeros only occur in contiguous out-of-view regions and the noise
floor stays at 1 or above, so legitimate extreme pixels sit in same-label
neighborhoods and survive similarity-based detection, as real
dark-background scans do.
"""
from __future__ import annotations

import numpy as np

from .noiselab import derive_seed


def _smooth(field: np.ndarray, passes: int) -> np.ndarray:
    """Repeated 3x3 box blur with replicated edges."""
    out = field
    for _ in range(passes):
        p = np.pad(out, 1, mode="edge")
        h, w = out.shape
        acc = np.zeros_like(out)
        for dy in range(3):
            for dx in range(3):
                acc += p[dy:dy + h, dx:dx + w]
        out = acc / 9.0
    return out


def make_phantom(seed: int, size: int = 256) -> np.ndarray:
    """One synthetic scan-like image, uint8, shape (size, size)."""
    if size < 16:
        raise ValueError(f"phantom size must be at least 16, got {size}")
    rng = np.random.default_rng(seed & 0xFFFFFFFF)
    s = size
    yy, xx = np.mgrid[0:s, 0:s].astype(np.float64)

    # Body ellipse, slightly rotated and off-center.
    cy = s * (0.5 + rng.uniform(-0.04, 0.04))
    cx = s * (0.5 + rng.uniform(-0.04, 0.04))
    ay = s * rng.uniform(0.33, 0.41)
    ax = s * rng.uniform(0.28, 0.36)
    theta = rng.uniform(-0.35, 0.35)
    ct, st = np.cos(theta), np.sin(theta)
    ry = ((yy - cy) * ct - (xx - cx) * st) / ay
    rx = ((yy - cy) * st + (xx - cx) * ct) / ax
    r2 = ry * ry + rx * rx

    # Tissue: radial falloff plus a fine smooth texture field.
    texture = _smooth(rng.normal(0.0, 1.0, (s, s)), 2)
    texture *= 11.0 / max(float(texture.std()), 1e-9)
    tissue = 105.0 + 85.0 * np.clip(1.0 - r2, 0.0, 1.0) ** 0.8 + texture

    # Inner cavities: darker lobes either side of center.
    for sign in (-1.0, 1.0):
        vy = cy + sign * ay * rng.uniform(0.10, 0.22)
        vx = cx + sign * ax * rng.uniform(0.05, 0.18)
        vr = s * rng.uniform(0.035, 0.06)
        d2 = ((yy - vy) ** 2 + (xx - vx) ** 2) / (vr * vr)
        tissue -= 80.0 * np.clip(1.0 - d2, 0.0, 1.0)

    # Bright nodules.
    for _ in range(int(rng.integers(2, 5))):
        ang = rng.uniform(0.0, 2.0 * np.pi)
        rad = rng.uniform(0.2, 0.7)
        ny = cy + ay * rad * np.sin(ang)
        nx = cx + ax * rad * np.cos(ang)
        nr = s * rng.uniform(0.015, 0.03)
        d2 = ((yy - ny) ** 2 + (xx - nx) ** 2) / (nr * nr)
        tissue = np.maximum(tissue, 150.0 + 95.0 * np.clip(1.0 - d2, 0.0, 1.0))

    # Background: a dim scanner noise floor, never exactly zero.
    floor = _smooth(rng.normal(0.0, 1.0, (s, s)), 3)
    floor *= 2.2 / max(float(floor.std()), 1e-9)
    background = np.clip(np.rint(4.0 + floor), 1, 12)

    body = r2 <= 1.0
    img = np.where(body, np.clip(tissue, 12.0, 250.0), background)

    # Sometimes the corners sit outside a circular field of view: true black.
    if rng.random() < 0.5:
        fov = s * rng.uniform(0.58, 0.68)
        d2 = (yy - s / 2.0) ** 2 + (xx - s / 2.0) ** 2
        img = np.where(d2 > fov * fov, 0.0, img)

    # Occasionally a small saturated core, a legitimate solid-255 structure.
    if rng.random() < 0.25:
        ky = cy + ay * rng.uniform(-0.4, 0.4)
        kx = cx + ax * rng.uniform(-0.4, 0.4)
        kr = s * rng.uniform(0.010, 0.016)
        d2 = (yy - ky) ** 2 + (xx - kx) ** 2
        img = np.where(d2 <= kr * kr, 255.0, img)

    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def desk_corpus(count: int = 12, size: int = 256, seed: int = 0) -> dict[str, np.ndarray]:
    """A named corpus of phantoms, keyed phantom00, phantom01, ..."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return {
        f"phantom{i:02d}": make_phantom(derive_seed(seed, i), size)
        for i in range(count)
    }
