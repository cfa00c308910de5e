"""Cross-bilateral smoothing of a depth map guided by the source image.

For each pixel the filtered depth is a normalized weighted mean over a square
window clipped to the image. A neighbour's weight is

    exp(-dist / (2 sigma_s**2) - |I_j - I_i| / (2 sigma_c**2))

where ``dist`` is the plain Euclidean pixel distance and ``I`` is the guide's
brightness. Neither term is squared by default; ``squared_kernel=True``
switches to the usual Gaussian form.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._parallel import run_row_bands
from ._validation import (
    check_gray_map,
    check_positive_int,
    check_range,
    check_rgb_image,
    check_same_size,
)
from .io import luma_milli

__all__ = [
    "FilterConfig",
    "cross_bilateral",
    "correct_with_initial",
    "spatial_weights",
    "color_weights",
]

MAX_LUMA_MILLI = 255_000


@dataclass(frozen=True)
class FilterConfig:
    sigma_s: float = 10.0
    sigma_c: float = 10.0
    radius: int = 7
    blend_alpha: float = 0.5
    squared_kernel: bool = False

    def __post_init__(self):
        check_range(self.sigma_s, "sigma_s", low=0.0, low_open=True)
        check_range(self.sigma_c, "sigma_c", low=0.0, low_open=True)
        check_positive_int(self.radius, "radius")
        check_range(self.blend_alpha, "blend_alpha", low=0.0, high=1.0)


def spatial_weights(radius, sigma_s, squared=False):
    """``(2r+1, 2r+1)`` table of the distance factor, indexed ``[dy + r, dx + r]``."""
    off = np.arange(-radius, radius + 1, dtype=np.float64)
    d2 = off[:, None] ** 2 + off[None, :] ** 2
    dist = d2 if squared else np.sqrt(d2)
    return np.exp(-dist / (2.0 * sigma_s**2))


def color_weights(sigma_c, squared=False):
    """Brightness factor for every absolute brightness difference in milli-units."""
    diff = np.arange(MAX_LUMA_MILLI + 1, dtype=np.float64) / 1000.0
    if squared:
        diff = diff * diff
    return np.exp(-diff / (2.0 * sigma_c**2))


@njit(cache=True, nogil=True)
def _filter_rows(depth, lum, ws, wc, radius, out, y0, y1):
    height, width = depth.shape
    for y in range(y0, y1):
        ya = max(0, y - radius)
        yb = min(height - 1, y + radius)
        for x in range(width):
            xa = max(0, x - radius)
            xb = min(width - 1, x + radius)
            center = lum[y, x]
            acc = 0.0
            norm = 0.0
            for yy in range(ya, yb + 1):
                wrow = ws[yy - y + radius]
                for xx in range(xa, xb + 1):
                    w = wrow[xx - x + radius] * wc[abs(lum[yy, xx] - center)]
                    acc += depth[yy, xx] * w
                    norm += w
            v = np.floor(acc / norm + 0.5)
            if v < 0.0:
                v = 0.0
            elif v > 255.0:
                v = 255.0
            out[y, x] = np.uint8(v)


def cross_bilateral(depth, guide, cfg=None, workers=1):
    """Filter ``depth`` with weights from ``guide`` brightness and pixel distance.

    Parameters
    ----------
    depth : array-like of shape (height, width), uint8
    guide : array-like of shape (height, width, 3), uint8
    cfg : FilterConfig, optional
    workers : int
        Row bands filtered concurrently. Output does not depend on it.

    Returns
    -------
    ndarray of shape (height, width), uint8
        Rounded half up and clamped to ``[0, 255]``.
    """
    cfg = cfg or FilterConfig()
    depth = check_gray_map(depth)
    guide = check_rgb_image(guide, name="guide")
    check_same_size(depth, guide, "depth", "guide")
    workers = check_positive_int(workers, "workers")

    lum = luma_milli(guide)
    ws = spatial_weights(cfg.radius, cfg.sigma_s, cfg.squared_kernel)
    wc = color_weights(cfg.sigma_c, cfg.squared_kernel)
    out = np.empty_like(depth)
    run_row_bands(
        _filter_rows, depth.shape[0], workers, depth, lum, ws, wc, int(cfg.radius), out
    )
    return out


def correct_with_initial(filtered, initial, cfg=None):
    """Blend the filtered map back toward the unfiltered one.

    ``round(alpha * filtered + (1 - alpha) * initial)`` per pixel, rounding
    half up, with ``alpha = cfg.blend_alpha``.
    """
    cfg = cfg or FilterConfig()
    filtered = check_gray_map(filtered, name="filtered")
    initial = check_gray_map(initial, name="initial")
    check_same_size(filtered, initial, "filtered", "initial")
    a = float(cfg.blend_alpha)
    mixed = a * filtered.astype(np.float64) + (1.0 - a) * initial.astype(np.float64)
    return np.clip(np.floor(mixed + 0.5), 0, 255).astype(np.uint8)
