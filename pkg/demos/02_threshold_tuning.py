"""
What the similarity threshold trades off
========================================

t1 is the number of differing neighbors an extreme pixel tolerates before it
is declared noisy. Low thresholds catch clustered impulses but start eating
legitimate structure; high thresholds never touch structure but let impulse
clusters through. This script sweeps t1 over a noisy phantom and prints the
detection quality and resulting PSNR at two noise densities.
"""
import numpy as np

from spdenoise import DetectorConfig, NoiseSpec, denoise, detect, inject, make_phantom, psnr

clean = make_phantom(seed=3, size=256)

for density in (0.05, 0.20):
    noisy, truth = inject(clean, NoiseSpec(density=density, seed=11))
    print(f"\ndensity {density * 100:.0f}%  "
          f"({truth.sum()} injected, noisy PSNR {psnr(clean, noisy):.2f} dB)")
    print(f"{'t1':>3} {'flagged':>8} {'caught':>7} {'false':>6} {'PSNR dB':>8}")
    for t1 in range(9):
        cfg = DetectorConfig(t1=t1)
        mask = detect(noisy, cfg)
        caught = int((mask & truth).sum())
        false = int((mask & ~truth).sum())
        quality = psnr(clean, denoise(noisy, cfg))
        marker = "  <- default" if t1 == DetectorConfig().t1 else ""
        print(f"{t1:>3} {int(mask.sum()):>8} {caught:>7} {false:>6} {quality:>8.2f}{marker}")

print(
    "\nNote how t1=8 (flag nothing unless all neighbors differ) leaves"
    "\nclustered impulses behind at 20% density, while very low thresholds"
    "\nflag real structure. The default keeps straight edges (at most 3"
    "\ndiffering neighbors) while still catching small clusters."
)
