"""Command-line front end: denoise, mask, inject, eval, and sweep over PGM files.

Densities on the command line are percentages (``--densities 5,10,15,20``);
the API uses fractions. Exit status is 0 on success, 1 on file or format
errors (with a one-line diagnostic naming the path), 2 on bad arguments.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .detector import DetectorConfig, detect
from .image import mask_to_gray
from .noiselab import NoiseSpec, inject, mse, psnr, sweep
from .pgm import PgmFormatError, load_pgm, save_pgm
from .restorer import denoise
from .streaming import stream_denoise


class _CliError(Exception):
    """File-level failure; rendered as a one-line diagnostic, exit status 1."""


def _t1(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"t1 must be an integer, got {text!r}")
    if not 0 <= v <= 8:
        raise argparse.ArgumentTypeError(f"t1 must be in [0, 8], got {v}")
    return v


def _percent(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a percentage, got {text!r}")
    if not 0.0 < v <= 100.0:
        raise argparse.ArgumentTypeError(f"density must be in (0, 100], got {v}")
    return v / 100.0


def _percent_list(text: str) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected a comma-separated density list")
    return [_percent(p) for p in parts]


def _method_list(text: str) -> list[str]:
    known = ("median3", "median5", "proposed")
    names = [p.strip() for p in text.split(",") if p.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated method list")
    for name in names:
        if name not in known:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from {', '.join(known)}"
            )
    return names


def _ratio(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a fraction, got {text!r}")
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"salt ratio must be in [0, 1], got {v}")
    return v


def _load(path: str):
    try:
        return load_pgm(path)
    except (OSError, PgmFormatError) as e:
        raise _CliError(f"{path}: {e}") from e


def _save(path: str, img) -> None:
    try:
        save_pgm(path, img)
    except OSError as e:
        raise _CliError(f"{path}: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdenoise",
        description="Salt-and-pepper noise removal and evaluation over PGM images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise", help="remove impulse noise from a PGM image")
    p.add_argument("--in", dest="inp", required=True, metavar="PGM")
    p.add_argument("--out", required=True, metavar="PGM")
    p.add_argument("--t1", type=_t1, default=3, help="similarity threshold (0-8, default 3)")
    p.add_argument("--engine", choices=("reference", "streaming"), default="reference",
                   help="implementation to run; output pixels are identical")
    p.add_argument("--stats", action="store_true",
                   help="with --engine streaming, print dataflow stats")

    p = sub.add_parser("mask", help="write the detected noise mask as a 0/255 PGM")
    p.add_argument("--in", dest="inp", required=True, metavar="PGM")
    p.add_argument("--out", required=True, metavar="PGM")
    p.add_argument("--t1", type=_t1, default=3)

    p = sub.add_parser("inject", help="corrupt a PGM with salt-and-pepper noise")
    p.add_argument("--in", dest="inp", required=True, metavar="PGM")
    p.add_argument("--out", required=True, metavar="PGM")
    p.add_argument("--mask-out", metavar="PGM",
                   help="ground-truth corruption mask path (default: <out>_mask.pgm)")
    p.add_argument("--density", type=_percent, required=True,
                   help="percent of pixels to corrupt, in (0, 100]")
    p.add_argument("--salt-ratio", type=_ratio, default=0.5,
                   help="fraction of corrupted pixels set to 255 (default 0.5)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval", help="print PSNR/MSE between two PGM images")
    p.add_argument("--ref", required=True, metavar="PGM")
    p.add_argument("--test", required=True, metavar="PGM")

    p = sub.add_parser("sweep", help="benchmark denoisers over a corpus, write CSV")
    p.add_argument("--corpus", required=True, metavar="DIR",
                   help="directory scanned for *.pgm, sorted lexicographically")
    p.add_argument("--densities", type=_percent_list, required=True,
                   help="comma-separated percentages, e.g. 5,10,15,20")
    p.add_argument("--methods", type=_method_list, default=["median3", "median5", "proposed"],
                   help="comma-separated subset of median3,median5,proposed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t1", type=_t1, default=3)
    p.add_argument("--out", required=True, metavar="CSV")

    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "denoise":
        img = _load(args.inp)
        cfg = DetectorConfig(t1=args.t1)
        if args.engine == "streaming":
            result, stats = stream_denoise(img, cfg=cfg)
            if args.stats:
                sys.stdout.write(stats.to_text())
        else:
            result = denoise(img, cfg)
        _save(args.out, result)
        return 0

    if args.command == "mask":
        img = _load(args.inp)
        mask = detect(img, DetectorConfig(t1=args.t1))
        _save(args.out, mask_to_gray(mask))
        return 0

    if args.command == "inject":
        img = _load(args.inp)
        spec = NoiseSpec(density=args.density, salt_ratio=args.salt_ratio, seed=args.seed)
        noisy, mask = inject(img, spec)
        mask_path = args.mask_out
        if mask_path is None:
            out = Path(args.out)
            mask_path = str(out.with_name(out.stem + "_mask" + out.suffix))
        _save(args.out, noisy)
        _save(mask_path, mask_to_gray(mask))
        return 0

    if args.command == "eval":
        ref = _load(args.ref)
        test = _load(args.test)
        try:
            p = psnr(ref, test)
            m = mse(ref, test)
        except ValueError as e:
            raise _CliError(f"{args.test}: {e}") from e
        print(f"psnr_db={p:g} mse={m:g}")
        return 0

    if args.command == "sweep":
        corpus_dir = Path(args.corpus)
        paths = sorted(corpus_dir.glob("*.pgm"))
        if not paths:
            raise _CliError(f"{args.corpus}: no .pgm files found")
        corpus = [(path.name, _load(str(path))) for path in paths]
        report = sweep(corpus, args.densities, methods=args.methods,
                       seed=args.seed, cfg=DetectorConfig(t1=args.t1))
        try:
            Path(args.out).write_text(report.to_csv())
        except OSError as e:
            raise _CliError(f"{args.out}: {e}") from e
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except _CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
