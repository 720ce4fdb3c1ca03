"""Command-line entry point: ``restorekit <command> ...``.

Exit codes: 0 success, 1 usage error, 2 I/O or data error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import bench as _bench
from .degrade import DegradationSpec, degrade, mask_from_image, mask_to_image
from .freqdomain import homomorphic, homomorphic_enhance
from .imagecore import read_pgm, write_pgm
from .metrics import CSV_HEADER, evaluate
from .restore import RestoreConfig, ndb_restore
from .video import estimate_sequence_motion, read_frames, temporal_median_denoise, write_frames

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _seed(text):
    v = _nonneg_int(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _int_tuple(n_min, n_max):
    def parse(text):
        try:
            parts = tuple(int(p) for p in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
        if not n_min <= len(parts) <= n_max:
            raise argparse.ArgumentTypeError(f"expected {n_min}..{n_max} values, got {text!r}")
        return parts

    return parse


def _densities(text):
    """``0.1,0.2,0.5`` or an inclusive range ``start:stop:step``."""
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step <= 0:
                raise ValueError
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            values = [round(start + k * step, 10) for k in range(n)]
        else:
            values = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad density list {text!r}") from None
    if not values or any(not 0.0 < v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("densities must lie in (0, 1]")
    return values


def _filter_list(text):
    names = [n.strip() for n in text.split(",") if n.strip()]
    bad = [n for n in names if n not in _bench.FILTER_IDS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown filter(s) {bad}; choose from {', '.join(_bench.FILTER_IDS)}"
        )
    return names


def _add_mix_flags(p):
    p.add_argument("--drop-lines", type=_nonneg_int, default=0, metavar="K")
    p.add_argument("--strip-lines", type=_nonneg_int, default=0, metavar="K")
    p.add_argument("--band", type=_int_tuple(2, 2), metavar="START,WIDTH")
    p.add_argument("--blotches", type=_int_tuple(1, 3), metavar="K[,RMIN,RMAX]")
    p.add_argument("--gaussian", type=_nonneg_float, metavar="SIGMA")


def _mix_spec(args, impulse=0.0, seed=0):
    blotches, radius = 0, (2, 6)
    if args.blotches:
        blotches = args.blotches[0]
        if len(args.blotches) == 3:
            radius = args.blotches[1:]
        elif len(args.blotches) == 2:
            raise UsageError("--blotches takes K or K,RMIN,RMAX")
    try:
        return DegradationSpec(
            impulse_density=impulse,
            drop_lines=args.drop_lines,
            strip_lines=args.strip_lines,
            band=args.band,
            blotches=blotches,
            blotch_radius=radius,
            gaussian_sigma=args.gaussian,
            seed=seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_filter_params(p):
    p.add_argument("--center-weight", type=int, default=3, help="cwmf/tsmf centre weight (odd)")
    p.add_argument("--threshold", type=_nonneg_float, default=20, help="tsmf threshold")
    p.add_argument("--max-window", type=int, default=7, help="amf maximum window (odd)")
    p.add_argument("--no-recursive", action="store_true", help="ndb: scan against a frozen copy")


def _filter_params(args):
    return dict(
        center_weight=args.center_weight,
        threshold=args.threshold,
        max_window=args.max_window,
        recursive=not args.no_recursive,
    )


def _write_csv(path, rows):
    if path in (None, "-"):
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(rows)
        return
    with open(path, "w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


def cmd_degrade(args):
    img = read_pgm(args.inp)
    spec = _mix_spec(args, impulse=args.impulse, seed=args.seed)
    out, mask = degrade(img, spec)
    write_pgm(args.out, out)
    if args.mask:
        write_pgm(args.mask, mask_to_image(mask))
    return EXIT_OK


def cmd_restore(args):
    img = read_pgm(args.inp)
    params = _filter_params(args)
    if args.filter == "ndb":
        restored, trace = ndb_restore(img, RestoreConfig(recursive=params["recursive"]))
        if args.trace:
            counts = trace.counts()
            _write_csv(args.trace, [list(counts), [counts[k] for k in counts]])
    else:
        if args.trace:
            raise UsageError("--trace is only available for --filter ndb")
        try:
            est = _bench.make_filter(args.filter, **params)
            restored = est.fit_transform(img)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    write_pgm(args.out, restored)
    return EXIT_OK


def cmd_metrics(args):
    original = read_pgm(args.original)
    noisy = read_pgm(args.noisy)
    restored = read_pgm(args.restored)
    mask = mask_from_image(read_pgm(args.mask))
    report = evaluate(original, noisy, restored, mask)
    density = float(mask.mean())
    _write_csv(args.out, [CSV_HEADER, report.csv_row(args.filter_name, density)])
    return EXIT_OK


def cmd_bench(args):
    image = read_pgm(args.image)
    mix = _mix_spec(args)
    rows = [CSV_HEADER]
    try:
        for name, p, report in _bench.run_bench(
            image, args.densities, args.filters, mix, args.seed, _filter_params(args)
        ):
            rows.append(report.csv_row(name, p))
    except ValueError as exc:
        if "filter" in str(exc) or "odd" in str(exc):
            raise UsageError(str(exc)) from None
        raise
    _write_csv(args.out, rows)
    if args.show_published:
        print("published PSNR at 20% impulse noise (Lena, Goldhill):", file=sys.stderr)
        for name, (lena, goldhill) in _bench.PUBLISHED_PSNR_20PCT.items():
            print(f"  {name:28s} {lena:6.2f} {goldhill:6.2f}", file=sys.stderr)
    return EXIT_OK


def cmd_homomorphic(args):
    img = read_pgm(args.inp)
    try:
        t = homomorphic(args.cutoff, args.gamma_l, args.gamma_h, args.sharpness)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_pgm(args.out, homomorphic_enhance(img, t))
    return EXIT_OK


def cmd_video_denoise(args):
    frames, names = read_frames(args.frames)
    if len(frames) < 3:
        raise ValueError(f"temporal denoising needs at least 3 frames, found {len(frames)}")
    motion = None
    if not args.no_motion:
        motion = estimate_sequence_motion(frames, args.block, args.search)
    out = temporal_median_denoise(frames, motion)
    write_frames(args.out, out, names)
    if args.motion_csv and motion is not None:
        d = Path(args.motion_csv)
        d.mkdir(parents=True, exist_ok=True)
        for t, pair in enumerate(motion):
            if pair is None:
                continue
            pair[0].to_csv(d / f"motion_{t:04d}_prev.csv")
            pair[1].to_csv(d / f"motion_{t:04d}_next.csv")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="restorekit", description="Impulse/scanline artifact restoration toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("degrade", help="inject seeded artifacts into a PGM image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--impulse", type=_fraction, default=0.0, metavar="P")
    _add_mix_flags(p)
    p.add_argument("--mask", help="write the corruption mask (255 = corrupted)")
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("restore", help="filter a PGM image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--filter", required=True, choices=_bench.FILTER_IDS)
    p.add_argument("--trace", help="ndb only: write per-case counts as CSV")
    _add_filter_params(p)
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("metrics", help="quality metrics for an original/noisy/restored triple")
    p.add_argument("--original", required=True)
    p.add_argument("--noisy", required=True)
    p.add_argument("--restored", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--filter-name", default="-")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="density x filter PSNR grid as CSV")
    p.add_argument("--image", required=True)
    p.add_argument("--densities", type=_densities, default=_densities("0.2"))
    p.add_argument("--filters", type=_filter_list, default=list(_bench.FILTER_IDS))
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--show-published", action="store_true", help="print published reference PSNRs to stderr")
    _add_mix_flags(p)
    _add_filter_params(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("homomorphic", help="homomorphic enhancement")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--gamma-l", type=float, default=0.5)
    p.add_argument("--gamma-h", type=float, default=1.5)
    p.add_argument("--cutoff", type=float, default=30.0)
    p.add_argument("--sharpness", type=float, default=1.0)
    p.set_defaults(func=cmd_homomorphic)

    p = sub.add_parser("video", help="motion-compensated temporal median over a frame directory")
    p.add_argument("--frames", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--block", type=int, default=16)
    p.add_argument("--search", type=_nonneg_int, default=7)
    p.add_argument("--no-motion", action="store_true")
    p.add_argument("--motion-csv", metavar="DIR", help="export motion fields as CSV")
    p.set_defaults(func=cmd_video_denoise)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"restorekit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"restorekit {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
