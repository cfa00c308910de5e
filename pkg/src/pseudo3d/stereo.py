"""Left/right view synthesis by horizontal forward warping.

Pixels brighter (nearer) than the virtual screen plane move apart with
negative parallax, ``x +/- (B/2) * d/255``; the rest move the other way by
``(B/2) * (1 - d/255)``. Target columns are rounded half up. Where several
sources land on one target the nearest (largest depth) wins, and on equal
depth the rightmost source wins. Targets no source reached are flagged in
the per-view damage mask.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._parallel import run_row_bands
from ._validation import (
    check_gray_map,
    check_mask,
    check_positive_int,
    check_range,
    check_rgb_image,
    check_same_size,
)

__all__ = [
    "StereoConfig",
    "StereoPair",
    "synthesize_pair",
    "warp_columns",
    "DAMAGE_COLOR",
    "render_damage",
]

DAMAGE_COLOR = (255, 0, 255)


@dataclass(frozen=True)
class StereoConfig:
    basis: float = 16.0
    screen: int = 150

    def __post_init__(self):
        check_range(self.basis, "basis", low=0.0)
        if isinstance(self.screen, bool) or int(self.screen) != self.screen:
            raise ValueError(f"screen must be an integer, got {self.screen!r}")
        check_range(self.screen, "screen", low=0, high=255)


@dataclass(frozen=True, eq=False)
class StereoPair:
    left: np.ndarray
    right: np.ndarray
    left_damage: np.ndarray
    right_damage: np.ndarray

    def __post_init__(self):
        left = check_rgb_image(self.left, "left")
        right = check_rgb_image(self.right, "right")
        check_same_size(left, right, "left", "right")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(
            self, "left_damage", check_mask(self.left_damage, left.shape, "left_damage")
        )
        object.__setattr__(
            self,
            "right_damage",
            check_mask(self.right_damage, left.shape, "right_damage"),
        )

    @classmethod
    def from_views(cls, left, right):
        """Pair with empty damage masks."""
        left = np.asarray(left)
        mask = np.zeros(left.shape[:2], dtype=bool)
        return cls(left, right, mask, mask.copy())

    def swapped(self):
        return StereoPair(self.right, self.left, self.right_damage, self.left_damage)

    @property
    def shape(self):
        return self.left.shape


@njit(cache=True, nogil=True)
def _round_half_up(v):
    return np.int64(np.floor(v + 0.5))


@njit(cache=True, nogil=True)
def _target_columns(x, d, basis, screen):
    if d > screen:
        shift = basis * d / 510.0
        return _round_half_up(x + shift), _round_half_up(x - shift)
    shift = basis * (255 - d) / 510.0
    return _round_half_up(x - shift), _round_half_up(x + shift)


@njit(cache=True, nogil=True)
def _warp_columns_vec(x, d, basis, screen):
    n = x.shape[0]
    xl = np.empty(n, np.int64)
    xr = np.empty(n, np.int64)
    for i in range(n):
        xl[i], xr[i] = _target_columns(x[i], d[i], basis[i], screen[i])
    return xl, xr


def warp_columns(x, depth, basis, screen):
    """Target columns ``(x_left, x_right)`` for source column(s) ``x``.

    Vectorized over broadcastable inputs; uses the same compiled routine as
    :func:`synthesize_pair`.
    """
    x, depth, basis, screen = np.broadcast_arrays(
        np.asarray(x, np.int64),
        np.asarray(depth, np.int64),
        np.asarray(basis, np.float64),
        np.asarray(screen, np.int64),
    )
    shape = x.shape
    xl, xr = _warp_columns_vec(
        x.ravel().copy(), depth.ravel().copy(), basis.ravel().copy(), screen.ravel().copy()
    )
    if shape == ():
        return int(xl[0]), int(xr[0])
    return xl.reshape(shape), xr.reshape(shape)


@njit(cache=True, nogil=True)
def _warp_rows(img, depth, basis, screen, left, right, ldmg, rdmg, y0, y1):
    width = img.shape[1]
    zl = np.empty(width, np.int64)
    zr = np.empty(width, np.int64)
    for y in range(y0, y1):
        zl[:] = -1
        zr[:] = -1
        for x in range(width):
            d = np.int64(depth[y, x])
            xl, xr = _target_columns(x, d, basis, screen)
            if 0 <= xl < width and d >= zl[xl]:
                zl[xl] = d
                left[y, xl, 0] = img[y, x, 0]
                left[y, xl, 1] = img[y, x, 1]
                left[y, xl, 2] = img[y, x, 2]
                ldmg[y, xl] = False
            if 0 <= xr < width and d >= zr[xr]:
                zr[xr] = d
                right[y, xr, 0] = img[y, x, 0]
                right[y, xr, 1] = img[y, x, 1]
                right[y, xr, 2] = img[y, x, 2]
                rdmg[y, xr] = False


def synthesize_pair(img, depth, cfg=None, workers=1):
    """Warp ``img`` into left and right views according to ``depth``.

    Parameters
    ----------
    img : array-like of shape (height, width, 3), uint8
    depth : array-like of shape (height, width), uint8
        255 is nearest.
    cfg : StereoConfig, optional
    workers : int
        Rows are independent; output does not depend on the worker count.

    Returns
    -------
    StereoPair
        Unwritten pixels are black and flagged in the damage masks.
    """
    cfg = cfg or StereoConfig()
    img = check_rgb_image(img)
    depth = check_gray_map(depth)
    check_same_size(img, depth, "img", "depth")
    workers = check_positive_int(workers, "workers")

    left = np.zeros_like(img)
    right = np.zeros_like(img)
    ldmg = np.ones(img.shape[:2], dtype=bool)
    rdmg = np.ones(img.shape[:2], dtype=bool)
    run_row_bands(
        _warp_rows,
        img.shape[0],
        workers,
        img,
        depth,
        float(cfg.basis),
        int(cfg.screen),
        left,
        right,
        ldmg,
        rdmg,
    )
    return StereoPair(left, right, ldmg, rdmg)


def render_damage(view, damage, color=DAMAGE_COLOR):
    """Copy of ``view`` with damaged pixels painted ``color``."""
    out = np.array(view, dtype=np.uint8, copy=True)
    out[np.asarray(damage, dtype=bool)] = color
    return out
