"""Primary depth map from region placement.

Regions that reach further down the frame are assumed closer to the viewer
and get brighter depth. Every pixel of a region shares one value, so the map
is piecewise flat until it is filtered.
"""

import numpy as np

from .segmentation import RegionMap

__all__ = ["DEPTH_ANCHORS", "estimate_depth", "region_depths"]

DEPTH_ANCHORS = ("bottom", "top")


def region_depths(regions, depth_anchor="bottom"):
    """Depth value per region id, as a ``uint8`` lookup table."""
    if depth_anchor not in DEPTH_ANCHORS:
        raise ValueError(
            f"depth_anchor must be one of {DEPTH_ANCHORS}, got {depth_anchor!r}"
        )
    if regions.height == 1:
        return np.full(regions.n_regions, 255, np.uint8)
    rows = regions.bottom_rows if depth_anchor == "bottom" else regions.top_rows
    # integer round-half-up of 255 * row / (height - 1)
    den = regions.height - 1
    lut = (2 * 255 * rows.astype(np.int64) + den) // (2 * den)
    return lut.astype(np.uint8)


def estimate_depth(regions, depth_anchor="bottom"):
    """Assign each region the normalized row of its lowest (or highest) pixel.

    Parameters
    ----------
    regions : RegionMap
    depth_anchor : {"bottom", "top"}
        ``"bottom"`` uses the region's lowest member row, so regions touching
        the bottom edge get 255. ``"top"`` uses the topmost member row.

    Returns
    -------
    ndarray of shape (height, width), uint8
    """
    if not isinstance(regions, RegionMap):
        raise TypeError(f"expected a RegionMap, got {type(regions).__name__}")
    return region_depths(regions, depth_anchor)[regions.labels]
