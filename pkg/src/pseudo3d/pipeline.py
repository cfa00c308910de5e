"""End-to-end conversion of a 2D frame into a packed stereo frame.

Stages: segment -> primary depth -> cross-bilateral filter -> blend with the
primary depth -> warp into two views -> inpaint both views -> pack. Each
stage is timed with a monotonic clock; disk I/O is not part of the timings.
"""

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._parallel import default_workers
from ._validation import check_positive_int, check_rgb_image
from .depth_estimation import DEPTH_ANCHORS, estimate_depth
from .depth_filtering import FilterConfig, correct_with_initial, cross_bilateral
from .inpainting import inpaint
from .io import load_image, save_graymap, save_image
from .packing import StereoFormat, pack
from .segmentation import RegionMap, SegmentationConfig, label_palette, segment
from .stereo import StereoConfig, StereoPair, render_damage, synthesize_pair

__all__ = [
    "PipelineConfig",
    "StageTimings",
    "Intermediates",
    "FrameResult",
    "convert",
    "convert_detailed",
    "convert_batch",
    "write_intermediates",
    "write_timings_csv",
    "CSV_HEADER",
    "INTERMEDIATE_FILES",
    "IMAGE_SUFFIXES",
]

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "frame",
    "width",
    "height",
    "workers",
    "seg_ms",
    "depth_ms",
    "filter_ms",
    "stereo_ms",
    "inpaint_ms",
    "pack_ms",
    "total_ms",
)

INTERMEDIATE_FILES = (
    "regions.png",
    "depth_primary.png",
    "depth_filtered.png",
    "left_raw.png",
    "right_raw.png",
    "left_inpainted.png",
    "right_inpainted.png",
    "packed.png",
)

IMAGE_SUFFIXES = (".png", ".ppm", ".pgm", ".pnm")


@dataclass(frozen=True)
class PipelineConfig:
    segmentation: SegmentationConfig = field(default_factory=SegmentationConfig)
    filter: FilterConfig = field(default_factory=FilterConfig)
    stereo: StereoConfig = field(default_factory=StereoConfig)
    format: StereoFormat = field(default_factory=StereoFormat)
    depth_anchor: str = "bottom"
    workers: int = field(default_factory=default_workers)
    dump_intermediates: bool = False

    def __post_init__(self):
        if self.depth_anchor not in DEPTH_ANCHORS:
            raise ValueError(
                f"depth_anchor must be one of {DEPTH_ANCHORS}, got {self.depth_anchor!r}"
            )
        check_positive_int(self.workers, "workers")


@dataclass
class StageTimings:
    """Wall-clock milliseconds per stage for one frame."""

    width: int
    height: int
    workers: int
    segmentation: float = 0.0
    depth_estimation: float = 0.0
    filtering: float = 0.0
    stereo_synthesis: float = 0.0
    inpainting: float = 0.0
    packing: float = 0.0
    total: float = 0.0

    def as_row(self, frame):
        return {
            "frame": frame,
            "width": self.width,
            "height": self.height,
            "workers": self.workers,
            "seg_ms": f"{self.segmentation:.3f}",
            "depth_ms": f"{self.depth_estimation:.3f}",
            "filter_ms": f"{self.filtering:.3f}",
            "stereo_ms": f"{self.stereo_synthesis:.3f}",
            "inpaint_ms": f"{self.inpainting:.3f}",
            "pack_ms": f"{self.packing:.3f}",
            "total_ms": f"{self.total:.3f}",
        }


@dataclass(eq=False)
class Intermediates:
    """Every panel of one conversion, plus its timings."""

    source: np.ndarray
    regions: RegionMap
    primary_depth: np.ndarray
    bilateral_depth: np.ndarray
    filtered_depth: np.ndarray
    raw_pair: StereoPair
    pair: StereoPair
    frame: np.ndarray
    timings: StageTimings


class _Clock:
    def __init__(self):
        self.t0 = self.last = time.perf_counter()

    def lap(self):
        now = time.perf_counter()
        ms = (now - self.last) * 1000.0
        self.last = now
        return ms

    def total(self):
        return (self.last - self.t0) * 1000.0


def convert_detailed(img, cfg=None):
    """Run the full conversion and keep every intermediate raster."""
    cfg = cfg or PipelineConfig()
    img = check_rgb_image(img)
    height, width = img.shape[:2]
    workers = cfg.workers
    timings = StageTimings(width=width, height=height, workers=workers)
    clock = _Clock()

    regions = segment(img, cfg.segmentation)
    timings.segmentation = clock.lap()

    primary = estimate_depth(regions, cfg.depth_anchor)
    timings.depth_estimation = clock.lap()

    smoothed = cross_bilateral(primary, img, cfg.filter, workers=workers)
    depth = correct_with_initial(smoothed, primary, cfg.filter)
    timings.filtering = clock.lap()

    raw = synthesize_pair(img, depth, cfg.stereo, workers=workers)
    timings.stereo_synthesis = clock.lap()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            fl = pool.submit(inpaint, raw.left, raw.left_damage)
            fr = pool.submit(inpaint, raw.right, raw.right_damage)
            left, right = fl.result(), fr.result()
    else:
        left = inpaint(raw.left, raw.left_damage)
        right = inpaint(raw.right, raw.right_damage)
    pair = StereoPair.from_views(left, right)
    timings.inpainting = clock.lap()

    frame = pack(pair, cfg.format)
    timings.packing = clock.lap()
    timings.total = clock.total()

    return Intermediates(
        source=img,
        regions=regions,
        primary_depth=primary,
        bilateral_depth=smoothed,
        filtered_depth=depth,
        raw_pair=raw,
        pair=pair,
        frame=frame,
        timings=timings,
    )


def convert(img, cfg=None):
    """Convert one RGB frame.

    Returns
    -------
    frame : ndarray
        The packed stereo frame.
    pair : StereoPair
        The inpainted views, with empty damage masks.
    timings : StageTimings
    """
    result = convert_detailed(img, cfg)
    return result.frame, result.pair, result.timings


def write_intermediates(result, directory):
    """Write the eight panels of a conversion as PNG files into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    raw = result.raw_pair
    save_image(label_palette(result.regions.labels), directory / "regions.png")
    save_graymap(result.primary_depth, directory / "depth_primary.png")
    save_graymap(result.filtered_depth, directory / "depth_filtered.png")
    save_image(render_damage(raw.left, raw.left_damage), directory / "left_raw.png")
    save_image(render_damage(raw.right, raw.right_damage), directory / "right_raw.png")
    save_image(result.pair.left, directory / "left_inpainted.png")
    save_image(result.pair.right, directory / "right_inpainted.png")
    save_image(result.frame, directory / "packed.png")
    return [directory / name for name in INTERMEDIATE_FILES]


@dataclass
class FrameResult:
    frame: str
    timings: StageTimings = None
    error: str = None

    @property
    def ok(self):
        return self.error is None


def _output_name(src):
    # gray inputs still produce RGB frames
    suffix = ".png" if src.suffix.lower() == ".png" else ".ppm"
    return src.stem + suffix


def _convert_file(src, output_dir, cfg, dump_dir):
    try:
        img = load_image(src)
        result = convert_detailed(img, cfg)
        save_image(result.frame, Path(output_dir) / _output_name(src))
        if dump_dir is not None:
            write_intermediates(result, Path(dump_dir) / src.stem)
        return FrameResult(src.name, result.timings)
    except Exception as exc:  # noqa: BLE001 - reported per frame
        logger.error("frame %s failed: %s", src.name, exc)
        return FrameResult(src.name, error=str(exc))


def convert_batch(input_dir, output_dir, cfg=None, dump_dir=None, frame_workers=1):
    """Convert every image in ``input_dir`` (lexicographic order).

    Each output is named after its input (PNM inputs are written as PPM). A failing frame is recorded with
    its error message and does not stop the rest of the batch.

    Returns
    -------
    list of FrameResult
    """
    cfg = cfg or PipelineConfig()
    input_dir = Path(input_dir)
    output_dir = Path(output_dir)
    if not input_dir.is_dir():
        raise NotADirectoryError(f"{input_dir} is not a directory")
    output_dir.mkdir(parents=True, exist_ok=True)
    frames = sorted(
        p for p in input_dir.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
    if dump_dir is None and cfg.dump_intermediates:
        dump_dir = output_dir / "intermediates"
    frame_workers = check_positive_int(frame_workers, "frame_workers")
    if frame_workers == 1 or len(frames) <= 1:
        return [_convert_file(p, output_dir, cfg, dump_dir) for p in frames]
    with ThreadPoolExecutor(max_workers=frame_workers) as pool:
        return list(pool.map(lambda p: _convert_file(p, output_dir, cfg, dump_dir), frames))


def write_timings_csv(rows, path):
    """Write timing rows (dicts keyed by ``CSV_HEADER``) to ``path``."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)

