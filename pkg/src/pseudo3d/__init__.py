"""Pseudo-3D stereo conversion of 2D images."""

__version__ = "0.1.0"

from .depth_estimation import estimate_depth
from .depth_filtering import FilterConfig, correct_with_initial, cross_bilateral
from .estimators import (
    CrossBilateralDepthFilter,
    LandscapeDepthEstimator,
    Pseudo3DConverter,
    RegionGrowingSegmenter,
)
from .inpainting import InpaintingError, inpaint, inpaint_passes
from .io import (
    ImageFormatError,
    load_graymap,
    load_image,
    luma,
    save_graymap,
    save_image,
)
from .packing import Layout, StereoFormat, pack
from .pipeline import (
    PipelineConfig,
    StageTimings,
    convert,
    convert_batch,
    convert_detailed,
)
from .segmentation import RegionMap, SegmentationConfig, segment
from .stereo import StereoConfig, StereoPair, synthesize_pair, warp_columns

__all__ = [
    "CrossBilateralDepthFilter",
    "FilterConfig",
    "ImageFormatError",
    "InpaintingError",
    "LandscapeDepthEstimator",
    "Layout",
    "PipelineConfig",
    "Pseudo3DConverter",
    "RegionGrowingSegmenter",
    "RegionMap",
    "SegmentationConfig",
    "StageTimings",
    "StereoConfig",
    "StereoFormat",
    "StereoPair",
    "convert",
    "convert_batch",
    "convert_detailed",
    "correct_with_initial",
    "cross_bilateral",
    "estimate_depth",
    "inpaint",
    "inpaint_passes",
    "load_graymap",
    "load_image",
    "luma",
    "pack",
    "save_graymap",
    "save_image",
    "segment",
    "synthesize_pair",
    "warp_columns",
]
