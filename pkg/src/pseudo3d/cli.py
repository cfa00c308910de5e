"""Command-line interface: ``pseudo3d convert | batch | bench``."""

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from ._parallel import default_workers
from .depth_estimation import DEPTH_ANCHORS
from .depth_filtering import FilterConfig
from .inpainting import InpaintingError
from .io import ImageFormatError, load_image, save_image
from .packing import FORMAT_NAMES, StereoFormat
from .pipeline import (
    PipelineConfig,
    convert_batch,
    convert_detailed,
    write_intermediates,
    write_timings_csv,
)
from .segmentation import SegmentationConfig
from .stereo import StereoConfig
from .synthetic import landscape, resize_bilinear

logger = logging.getLogger("pseudo3d")

EXIT_OK = 0
EXIT_FRAME_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_SIZES = "320x480,800x600,1920x1080"


def _real(low=None, high=None, low_open=False):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
        if value != value:
            raise argparse.ArgumentTypeError("NaN is not allowed")
        if low is not None and (value <= low if low_open else value < low):
            raise argparse.ArgumentTypeError(
                f"{value:g} out of range: must be {'>' if low_open else '>='} {low:g}"
            )
        if high is not None and value > high:
            raise argparse.ArgumentTypeError(
                f"{value:g} out of range [{low:g}, {high:g}]"
            )
        return value

    return parse


def _integer(low, high=None):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < low or (high is not None and value > high):
            span = f"[{low}, {high}]" if high is not None else f">= {low}"
            raise argparse.ArgumentTypeError(f"{value} out of range {span}")
        return value

    return parse


def _size_list(text):
    sizes = []
    for item in text.split(","):
        try:
            w, h = item.lower().split("x")
            w, h = int(w), int(h)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {item!r}, expected WIDTHxHEIGHT")
        if w < 1 or h < 1:
            raise argparse.ArgumentTypeError(f"bad size {item!r}, dimensions must be >= 1")
        sizes.append((w, h))
    return sizes


def _int_list(text):
    parse = _integer(1)
    return [parse(item) for item in text.split(",")]


def _add_pipeline_flags(p, workers=True):
    g = p.add_argument_group("pipeline")
    g.add_argument("--delta", type=_real(0.0), default=8.0,
                   help="region growing brightness threshold (default: 8)")
    g.add_argument("--sigma-s", type=_real(0.0, low_open=True), default=10.0)
    g.add_argument("--sigma-c", type=_real(0.0, low_open=True), default=10.0)
    g.add_argument("--radius", type=_integer(1), default=7,
                   help="filter window half-width (default: 7)")
    g.add_argument("--blend-alpha", type=_real(0.0, 1.0), default=0.5,
                   help="weight of the filtered map when blending with the primary map")
    g.add_argument("--squared-kernel", action="store_true",
                   help="square the distance terms of the filter weights")
    g.add_argument("--basis", type=_real(0.0), default=16.0,
                   help="maximum horizontal displacement budget in pixels (default: 16)")
    g.add_argument("--screen", type=_integer(0, 255), default=150,
                   help="virtual screen depth in [0, 255] (default: 150)")
    g.add_argument("--format", choices=FORMAT_NAMES, default="anaglyph")
    g.add_argument("--crossed", action="store_true", help="swap the eyes")
    g.add_argument("--anaglyph-variant", choices=("color", "gray"), default="color")
    g.add_argument("--anamorph-decimate", action="store_true",
                   help="halve anamorph views by dropping lines instead of averaging")
    g.add_argument("--depth-anchor", choices=DEPTH_ANCHORS, default="bottom")
    if workers:
        g.add_argument("--workers", type=_integer(1), default=None,
                       help="worker threads (default: available cores)")
    g.add_argument("--seed", type=int, default=0,
                   help="seed for synthetic test images")
    g.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pseudo3d", description="Convert 2D images into pseudo-3D stereo frames."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a single frame")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--dump-intermediates", type=Path, metavar="DIR")
    _add_pipeline_flags(p)

    p = sub.add_parser("batch", help="convert every frame in a directory")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--dump-intermediates", type=Path, metavar="DIR")
    p.add_argument("--csv", type=Path, help="write per-frame timings")
    _add_pipeline_flags(p)

    p = sub.add_parser("bench", help="time the pipeline over a resolution ladder")
    p.add_argument("input", type=Path, nargs="?",
                   help="source image (default: seeded synthetic landscape)")
    p.add_argument("--sizes", type=_size_list, default=_size_list(DEFAULT_SIZES))
    p.add_argument("--workers", type=_int_list, default=None,
                   help="comma-separated worker counts (default: 1,<cores>)")
    p.add_argument("--repeat", type=_integer(1), default=1,
                   help="runs per configuration; the fastest is reported")
    p.add_argument("--csv", type=Path)
    _add_pipeline_flags(p, workers=False)
    return parser


def config_from_args(args, workers=None):
    if workers is None:
        workers = getattr(args, "workers", None) or default_workers()
    return PipelineConfig(
        segmentation=SegmentationConfig(delta=args.delta),
        filter=FilterConfig(
            sigma_s=args.sigma_s,
            sigma_c=args.sigma_c,
            radius=args.radius,
            blend_alpha=args.blend_alpha,
            squared_kernel=args.squared_kernel,
        ),
        stereo=StereoConfig(basis=args.basis, screen=args.screen),
        format=StereoFormat(
            layout=args.format,
            crossed=args.crossed,
            anaglyph_variant=args.anaglyph_variant,
            anamorph_decimate=args.anamorph_decimate,
        ),
        depth_anchor=args.depth_anchor,
        workers=workers,
        dump_intermediates=getattr(args, "dump_intermediates", None) is not None,
    )


def _cmd_convert(args):
    cfg = config_from_args(args)
    try:
        img = load_image(args.input)
        result = convert_detailed(img, cfg)
        save_image(result.frame, args.output)
        if args.dump_intermediates is not None:
            write_intermediates(result, args.dump_intermediates)
    except (OSError, ImageFormatError, InpaintingError) as exc:
        logger.error("%s: %s", args.input, exc)
        return EXIT_FRAME_FAILURE
    t = result.timings
    logger.info("%s -> %s (%dx%d, %.1f ms)", args.input, args.output, t.width, t.height, t.total)
    return EXIT_OK


def _cmd_batch(args):
    cfg = config_from_args(args)
    try:
        results = convert_batch(args.input, args.output, cfg, dump_dir=args.dump_intermediates)
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_FRAME_FAILURE
    rows = [r.timings.as_row(r.frame) for r in results if r.ok]
    if args.csv is not None:
        write_timings_csv(rows, args.csv)
    failed = [r for r in results if not r.ok]
    for r in failed:
        print(f"FAILED {r.frame}: {r.error}", file=sys.stderr)
    print(f"{len(results) - len(failed)}/{len(results)} frames converted")
    return EXIT_FRAME_FAILURE if failed else EXIT_OK


def run_bench(source, sizes, workers_list, base_args, repeat=1, name="frame"):
    """Time full conversions of ``source`` rescaled to each size, per worker count."""
    rows = []
    for width, height in sizes:
        img = resize_bilinear(source, width, height)
        for workers in workers_list:
            cfg = config_from_args(base_args, workers=workers)
            best = None
            for _ in range(repeat):
                t = convert_detailed(img, cfg).timings
                if best is None or t.total < best.total:
                    best = t
            rows.append(best.as_row(f"{name}@{width}x{height}"))
    return rows


def _cmd_bench(args):
    if args.input is None:
        source = landscape(1920, 1080, seed=args.seed)
        name = f"landscape-seed{args.seed}"
    else:
        try:
            source = load_image(args.input)
        except (OSError, ImageFormatError) as exc:
            logger.error("%s: %s", args.input, exc)
            return EXIT_FRAME_FAILURE
        name = args.input.stem
    workers_list = args.workers or sorted({1, default_workers()})
    # warm the compiled kernels so the first row is not charged for JIT time
    convert_detailed(resize_bilinear(source, 16, 16), config_from_args(args, workers=1))
    rows = run_bench(source, args.sizes, workers_list, args, repeat=args.repeat, name=name)
    if args.csv is not None:
        write_timings_csv(rows, args.csv)
    for row in rows:
        print(
            f"{row['frame']:>28} workers={row['workers']:<3} "
            f"seg={row['seg_ms']:>10} filter={row['filter_ms']:>10} "
            f"stereo={row['stereo_ms']:>10} inpaint={row['inpaint_ms']:>10} "
            f"total={row['total_ms']:>10} ms"
        )
    return EXIT_OK


COMMANDS = {"convert": _cmd_convert, "batch": _cmd_batch, "bench": _cmd_bench}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
