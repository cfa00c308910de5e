"""scikit-learn compatible wrappers around the conversion stages.

The estimators carry their hyper-parameters as constructor arguments, so
``get_params``/``set_params``/``clone`` and grid-style sweeps work as usual.
Inputs are single images (``(H, W, 3)`` uint8 arrays), not sample matrices.
"""

from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._parallel import default_workers
from ._validation import check_gray_map, check_rgb_image, check_same_size
from .depth_estimation import estimate_depth
from .depth_filtering import FilterConfig, correct_with_initial, cross_bilateral
from .packing import StereoFormat
from .pipeline import PipelineConfig, convert_detailed
from .segmentation import SegmentationConfig, segment
from .stereo import StereoConfig

__all__ = [
    "RegionGrowingSegmenter",
    "LandscapeDepthEstimator",
    "CrossBilateralDepthFilter",
    "Pseudo3DConverter",
]


class RegionGrowingSegmenter(ClusterMixin, BaseEstimator):
    """Brightness region growing; ``fit_predict`` returns the label image.

    Parameters
    ----------
    delta : float, default=8.0
        Largest brightness deviation from a region mean that still joins it.

    Attributes
    ----------
    regions_ : RegionMap
    labels_ : ndarray of shape (height, width)
    n_regions_ : int
    """

    def __init__(self, delta=8.0):
        self.delta = delta

    def fit(self, X, y=None):
        X = check_rgb_image(X, name="X")
        self.regions_ = segment(X, SegmentationConfig(delta=self.delta))
        self.labels_ = self.regions_.labels
        self.n_regions_ = self.regions_.n_regions
        return self


class LandscapeDepthEstimator(TransformerMixin, BaseEstimator):
    """Image -> primary depth map via segmentation and region placement."""

    def __init__(self, delta=8.0, depth_anchor="bottom"):
        self.delta = delta
        self.depth_anchor = depth_anchor

    def fit(self, X=None, y=None):
        self.segmentation_config_ = SegmentationConfig(delta=self.delta)
        if self.depth_anchor not in ("bottom", "top"):
            raise ValueError(f"depth_anchor must be 'bottom' or 'top', got {self.depth_anchor!r}")
        return self

    def transform(self, X):
        check_is_fitted(self, "segmentation_config_")
        X = check_rgb_image(X, name="X")
        self.regions_ = segment(X, self.segmentation_config_)
        return estimate_depth(self.regions_, self.depth_anchor)


class CrossBilateralDepthFilter(TransformerMixin, BaseEstimator):
    """Guide-driven depth smoothing followed by the blend toward the input map.

    ``fit`` takes the guide image; ``transform`` takes a depth map of the same
    size and returns the corrected, filtered map.
    """

    def __init__(
        self,
        sigma_s=10.0,
        sigma_c=10.0,
        radius=7,
        blend_alpha=0.5,
        squared_kernel=False,
        workers=1,
    ):
        self.sigma_s = sigma_s
        self.sigma_c = sigma_c
        self.radius = radius
        self.blend_alpha = blend_alpha
        self.squared_kernel = squared_kernel
        self.workers = workers

    def fit(self, X, y=None):
        self.guide_ = check_rgb_image(X, name="guide")
        self.config_ = FilterConfig(
            sigma_s=self.sigma_s,
            sigma_c=self.sigma_c,
            radius=self.radius,
            blend_alpha=self.blend_alpha,
            squared_kernel=self.squared_kernel,
        )
        return self

    def transform(self, X):
        check_is_fitted(self, "guide_")
        depth = check_gray_map(X, name="X")
        check_same_size(depth, self.guide_, "depth", "guide")
        smoothed = cross_bilateral(depth, self.guide_, self.config_, workers=self.workers)
        return correct_with_initial(smoothed, depth, self.config_)


class Pseudo3DConverter(TransformerMixin, BaseEstimator):
    """Full 2D -> packed stereo frame conversion.

    Attributes
    ----------
    config_ : PipelineConfig
    pair_ : StereoPair
        Inpainted views from the last ``transform``.
    timings_ : StageTimings
        Per-stage timings from the last ``transform``.
    intermediates_ : Intermediates
    """

    def __init__(
        self,
        delta=8.0,
        sigma_s=10.0,
        sigma_c=10.0,
        radius=7,
        blend_alpha=0.5,
        squared_kernel=False,
        basis=16.0,
        screen=150,
        format="anaglyph",
        crossed=False,
        anaglyph_variant="color",
        anamorph_decimate=False,
        depth_anchor="bottom",
        workers=None,
    ):
        self.delta = delta
        self.sigma_s = sigma_s
        self.sigma_c = sigma_c
        self.radius = radius
        self.blend_alpha = blend_alpha
        self.squared_kernel = squared_kernel
        self.basis = basis
        self.screen = screen
        self.format = format
        self.crossed = crossed
        self.anaglyph_variant = anaglyph_variant
        self.anamorph_decimate = anamorph_decimate
        self.depth_anchor = depth_anchor
        self.workers = workers

    def to_config(self):
        return PipelineConfig(
            segmentation=SegmentationConfig(delta=self.delta),
            filter=FilterConfig(
                sigma_s=self.sigma_s,
                sigma_c=self.sigma_c,
                radius=self.radius,
                blend_alpha=self.blend_alpha,
                squared_kernel=self.squared_kernel,
            ),
            stereo=StereoConfig(basis=self.basis, screen=self.screen),
            format=StereoFormat(
                layout=self.format,
                crossed=self.crossed,
                anaglyph_variant=self.anaglyph_variant,
                anamorph_decimate=self.anamorph_decimate,
            ),
            depth_anchor=self.depth_anchor,
            workers=self.workers if self.workers is not None else default_workers(),
        )

    def fit(self, X=None, y=None):
        self.config_ = self.to_config()
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        result = convert_detailed(check_rgb_image(X, name="X"), self.config_)
        self.intermediates_ = result
        self.pair_ = result.pair
        self.timings_ = result.timings
        return result.frame
