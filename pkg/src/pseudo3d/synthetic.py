"""Seeded synthetic test frames."""

import numpy as np
from PIL import Image

__all__ = ["landscape", "mosaic", "resize_bilinear"]


def landscape(width=320, height=240, seed=0):
    """Sky, a ridge line, ground and a few foreground blobs, with mild noise."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width]
    img = np.empty((height, width, 3), np.float64)

    # sky fades toward the horizon
    t = yy / max(height - 1, 1)
    img[..., 0] = 90 + 80 * t
    img[..., 1] = 140 + 60 * t
    img[..., 2] = 230 - 20 * t

    phase = rng.uniform(0, 2 * np.pi, size=3)
    ridge = (
        0.42 * height
        + 0.06 * height * np.sin(2 * np.pi * xx / width + phase[0])
        + 0.03 * height * np.sin(6 * np.pi * xx / width + phase[1])
    )
    mountains = yy >= ridge
    img[mountains] = (95, 100, 110)

    horizon = 0.6 * height + 0.02 * height * np.sin(4 * np.pi * xx / width + phase[2])
    ground = yy >= horizon
    img[ground] = (70, 120, 50)

    for _ in range(3):
        cx = rng.uniform(0.1, 0.9) * width
        cy = rng.uniform(0.7, 0.95) * height
        r = rng.uniform(0.05, 0.12) * min(width, height)
        blob = (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
        img[blob] = rng.integers(140, 230, size=3)

    img += rng.normal(0.0, 2.0, size=img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def mosaic(width, height, levels, seed=0, block=1):
    """Random mosaic whose pixels take one of ``levels`` gray values."""
    rng = np.random.default_rng(seed)
    bh = -(-height // block)
    bw = -(-width // block)
    grid = rng.integers(0, levels, size=(bh, bw))
    grid = np.kron(grid, np.ones((block, block), dtype=grid.dtype))[:height, :width]
    values = np.linspace(0, 255, levels).round().astype(np.uint8)
    gray = values[grid]
    return np.repeat(gray[..., None], 3, axis=2)


def resize_bilinear(img, width, height):
    return np.asarray(
        Image.fromarray(np.asarray(img, np.uint8)).resize(
            (width, height), Image.Resampling.BILINEAR
        )
    )
