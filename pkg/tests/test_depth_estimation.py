import numpy as np
import pytest

from pseudo3d.depth_estimation import estimate_depth, region_depths
from pseudo3d.segmentation import SegmentationConfig, segment


def _bands(h, w, split):
    img = np.zeros((h, w, 3), np.uint8)
    img[split:] = 255
    return img


def test_two_bands_h100():
    rm = segment(_bands(100, 10, 50), SegmentationConfig(10))
    depth = estimate_depth(rm)
    # round(255 * 49 / 99) = round(126.21...) = 126
    assert (depth[:50] == 126).all()
    assert (depth[50:] == 255).all()


def test_single_region_is_nearest():
    rm = segment(np.full((9, 7, 3), 40, np.uint8))
    assert (estimate_depth(rm) == 255).all()


def test_one_row_image():
    img = np.zeros((1, 6, 3), np.uint8)
    img[0, 3:] = 255
    rm = segment(img, SegmentationConfig(1))
    assert rm.n_regions == 2
    assert (estimate_depth(rm) == 255).all()


def test_region_in_top_row_gets_zero():
    img = np.zeros((5, 4, 3), np.uint8)
    img[0, 1:3] = 200
    rm = segment(img, SegmentationConfig(1))
    depth = estimate_depth(rm)
    assert depth[0, 1] == 0 and depth[0, 2] == 0
    assert depth[4, 0] == 255


def test_top_anchor():
    rm = segment(_bands(100, 10, 50), SegmentationConfig(10))
    depth = estimate_depth(rm, depth_anchor="top")
    # bottom band starts at row 50: round(255 * 50 / 99) = 129
    assert (depth[:50] == 0).all() and (depth[50:] == 129).all()
    with pytest.raises(ValueError):
        estimate_depth(rm, depth_anchor="middle")


def test_flat_regions_and_monotone(scene):
    rm = segment(scene)
    depth = estimate_depth(rm)
    assert depth.shape == scene.shape[:2]
    for k in range(rm.n_regions):
        assert len(np.unique(depth[rm.labels == k])) == 1
    lut = region_depths(rm)
    order = np.argsort(rm.bottom_rows, kind="stable")
    assert np.all(np.diff(lut[order].astype(int)) >= 0)
    expected = np.floor(255 * rm.bottom_rows / (rm.height - 1) + 0.5)
    assert np.array_equal(lut, expected.astype(np.uint8))
