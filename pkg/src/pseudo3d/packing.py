"""Stereo frame layouts: full and half-resolution side-by-side / top-bottom,
row-interlaced and colour anaglyph."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._validation import check_same_size
from .io import luma_milli
from .stereo import StereoPair

__all__ = ["Layout", "StereoFormat", "pack", "FORMAT_NAMES"]


class Layout(str, Enum):
    FULL_SBS = "full-sbs"
    FULL_TOP_BOTTOM = "full-tb"
    ANAMORPH_SBS = "anamorph-sbs"
    ANAMORPH_TOP_BOTTOM = "anamorph-tb"
    INTERLACED = "interlaced"
    ANAGLYPH = "anaglyph"


FORMAT_NAMES = tuple(layout.value for layout in Layout)
ANAGLYPH_VARIANTS = ("color", "gray")


@dataclass(frozen=True)
class StereoFormat:
    layout: Layout = Layout.ANAGLYPH
    crossed: bool = False
    anaglyph_variant: str = "color"
    anamorph_decimate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "layout", Layout(self.layout))
        if self.anaglyph_variant not in ANAGLYPH_VARIANTS:
            raise ValueError(
                f"anaglyph_variant must be one of {ANAGLYPH_VARIANTS}, "
                f"got {self.anaglyph_variant!r}"
            )


def _halve(view, axis, decimate):
    """2:1 compression along ``axis``; an odd trailing line pairs with itself."""
    a = np.take(view, np.arange(0, view.shape[axis], 2), axis=axis)
    if decimate:
        return a
    idx = np.minimum(np.arange(1, view.shape[axis] + 1, 2), view.shape[axis] - 1)
    b = np.take(view, idx, axis=axis)
    return ((a.astype(np.uint16) + b + 1) // 2).astype(np.uint8)


def _gray3(view):
    g = (luma_milli(view) + 500) // 1000
    return g.astype(np.uint8)


def pack(pair, fmt=None):
    """Compose a finished stereo pair into a single frame.

    Parameters
    ----------
    pair : StereoPair
        Views of equal size ``W x H``; damage masks are ignored.
    fmt : StereoFormat or str, optional
        A layout name is accepted in place of a full format.

    Returns
    -------
    ndarray
        ``(H, 2W, 3)`` for full side-by-side, ``(2H, W, 3)`` for full
        top-bottom and ``(H, W, 3)`` for the other layouts.
    """
    if fmt is None:
        fmt = StereoFormat()
    elif not isinstance(fmt, StereoFormat):
        fmt = StereoFormat(layout=fmt)
    if not isinstance(pair, StereoPair):
        raise TypeError(f"expected a StereoPair, got {type(pair).__name__}")
    left, right = pair.left, pair.right
    check_same_size(left, right, "left view", "right view")
    if fmt.crossed:
        left, right = right, left
    height, width = left.shape[:2]
    layout = fmt.layout

    if layout is Layout.FULL_SBS:
        return np.concatenate([left, right], axis=1)
    if layout is Layout.FULL_TOP_BOTTOM:
        return np.concatenate([left, right], axis=0)
    if layout is Layout.ANAMORPH_SBS:
        lh = _halve(left, 1, fmt.anamorph_decimate)
        rh = _halve(right, 1, fmt.anamorph_decimate)
        return np.concatenate([lh, rh[:, : width - lh.shape[1]]], axis=1)
    if layout is Layout.ANAMORPH_TOP_BOTTOM:
        lh = _halve(left, 0, fmt.anamorph_decimate)
        rh = _halve(right, 0, fmt.anamorph_decimate)
        return np.concatenate([lh, rh[: height - lh.shape[0]]], axis=0)
    if layout is Layout.INTERLACED:
        out = right.copy()
        out[0::2] = left[0::2]
        return out
    # anaglyph: red from the left eye, green and blue from the right eye
    if fmt.anaglyph_variant == "gray":
        gl, gr = _gray3(left), _gray3(right)
        return np.stack([gl, gr, gr], axis=-1)
    out = right.copy()
    out[..., 0] = left[..., 0]
    return out
