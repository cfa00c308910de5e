"""Region-growing segmentation by brightness similarity.

A single raster scan assigns each pixel to the class of its left or upper
neighbour when its brightness deviates from that class mean by at most
``delta``; otherwise it founds a new class. When a pixel fits both neighbour
classes and the two class means are themselves within ``delta`` of each other,
the classes are merged. Merges go through a union-find forest whose roots
carry the brightness sum and pixel count, so class means stay exact.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._validation import check_range, check_rgb_image
from .io import luma_milli

__all__ = ["SegmentationConfig", "RegionMap", "segment", "label_palette"]


@dataclass(frozen=True)
class SegmentationConfig:
    delta: float = 8.0

    def __post_init__(self):
        check_range(self.delta, "delta", low=0.0)


@dataclass(frozen=True, eq=False)
class RegionMap:
    """Per-pixel region labels plus per-region statistics.

    Attributes
    ----------
    labels : ndarray of shape (height, width), int32
        Region id of every pixel, compacted to ``0..n_regions-1`` in order of
        first appearance in the raster scan.
    pixel_counts : ndarray of shape (n_regions,), int64
    mean_brightness : ndarray of shape (n_regions,), float64
        Mean Rec.601 brightness of the member pixels.
    bottom_rows, top_rows : ndarray of shape (n_regions,), int64
        Largest and smallest row index over the member pixels.
    """

    labels: np.ndarray
    pixel_counts: np.ndarray
    mean_brightness: np.ndarray
    bottom_rows: np.ndarray
    top_rows: np.ndarray

    @property
    def height(self):
        return self.labels.shape[0]

    @property
    def width(self):
        return self.labels.shape[1]

    @property
    def n_regions(self):
        return len(self.pixel_counts)

    def __len__(self):
        return self.n_regions


@njit(cache=True, nogil=True)
def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@njit(cache=True, nogil=True)
def _fits(v, s, c, thr):
    # |v - s/c| <= thr, kept exact for integer brightness
    return abs(v * c - s) <= thr * c


@njit(cache=True, nogil=True)
def _grow(lum, thr):
    height, width = lum.shape
    n_pix = height * width
    prov = np.empty((height, width), np.int64)
    parent = np.empty(n_pix, np.int64)
    sums = np.empty(n_pix, np.int64)
    counts = np.empty(n_pix, np.int64)
    n = 0

    for y in range(height):
        for x in range(width):
            v = lum[y, x]
            target = -1
            if y == 0 and x == 0:
                target = -1
            elif y == 0 or x == 0:
                if y == 0:
                    c = _find(parent, prov[y, x - 1])
                else:
                    c = _find(parent, prov[y - 1, x])
                if _fits(v, sums[c], counts[c], thr):
                    target = c
            else:
                cl = _find(parent, prov[y, x - 1])
                cu = _find(parent, prov[y - 1, x])
                fit_l = _fits(v, sums[cl], counts[cl], thr)
                if cl == cu:
                    if fit_l:
                        target = cl
                else:
                    fit_u = _fits(v, sums[cu], counts[cu], thr)
                    if fit_l and fit_u:
                        sl, nl = sums[cl], counts[cl]
                        su, nu = sums[cu], counts[cu]
                        if abs(sl * nu - su * nl) <= thr * nl * nu:
                            # join the two classes under the older root
                            root, child = (cl, cu) if cl < cu else (cu, cl)
                            parent[child] = root
                            sums[root] = sl + su
                            counts[root] = nl + nu
                            target = root
                        else:
                            # smaller deviation wins, ties go left
                            if abs(v * nl - sl) * nu <= abs(v * nu - su) * nl:
                                target = cl
                            else:
                                target = cu
                    elif fit_l:
                        target = cl
                    elif fit_u:
                        target = cu
            if target < 0:
                parent[n] = n
                sums[n] = v
                counts[n] = 1
                target = n
                n += 1
            else:
                sums[target] += v
                counts[target] += 1
            prov[y, x] = target

    # compaction in first-appearance order plus per-region statistics
    remap = np.full(n, -1, np.int64)
    labels = np.empty((height, width), np.int32)
    pix = np.zeros(n, np.int64)
    lsum = np.zeros(n, np.int64)
    bottom = np.zeros(n, np.int64)
    top = np.zeros(n, np.int64)
    m = 0
    for y in range(height):
        for x in range(width):
            r = _find(parent, prov[y, x])
            k = remap[r]
            if k < 0:
                k = m
                remap[r] = k
                top[k] = y
                m += 1
            labels[y, x] = k
            pix[k] += 1
            lsum[k] += lum[y, x]
            bottom[k] = y
    return labels, pix[:m], lsum[:m], bottom[:m], top[:m]


def segment(img, cfg=None):
    """Segment an RGB image into brightness-homogeneous 4-connected regions.

    Parameters
    ----------
    img : array-like of shape (height, width, 3), uint8
    cfg : SegmentationConfig, optional
        Defaults to ``SegmentationConfig()``.

    Returns
    -------
    RegionMap
    """
    cfg = cfg or SegmentationConfig()
    img = check_rgb_image(img)
    lum = luma_milli(img)
    labels, counts, sums, bottom, top = _grow(lum, float(cfg.delta) * 1000.0)
    return RegionMap(
        labels=labels,
        pixel_counts=counts,
        mean_brightness=sums / counts / 1000.0,
        bottom_rows=bottom,
        top_rows=top,
    )


def label_palette(labels):
    """False-colour rendering of a label array with a fixed hash palette."""
    lab = np.asarray(labels).astype(np.uint64)
    h = (lab + np.uint64(1)) * np.uint64(2654435761)
    h ^= h >> np.uint64(13)
    h *= np.uint64(0x5BD1E995)
    h ^= h >> np.uint64(15)
    rgb = np.stack(
        [(h >> np.uint64(s)) & np.uint64(0xFF) for s in (0, 8, 16)], axis=-1
    )
    return rgb.astype(np.uint8)
