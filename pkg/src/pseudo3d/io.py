"""Raster codecs (PNG, binary PPM/PGM) and brightness helpers."""

import os
import re
from pathlib import Path

import numpy as np
from PIL import Image

from ._validation import check_gray_map, check_rgb_image

__all__ = [
    "ImageFormatError",
    "load_image",
    "save_image",
    "load_graymap",
    "save_graymap",
    "luma",
    "luma_array",
    "luma_milli",
]

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

# Rec.601 weights, scaled by 1000 so that brightness sums stay exact integers.
LUMA_WEIGHTS_MILLI = (299, 587, 114)


class ImageFormatError(ValueError):
    """Raised for undecodable, unsupported or malformed raster files."""


def luma(pixel):
    """Rec.601 brightness of one ``(r, g, b)`` pixel, in ``[0, 255]``."""
    r, g, b = pixel
    return 0.299 * r + 0.587 * g + 0.114 * b


def luma_milli(img):
    """Per-pixel brightness times 1000 as exact ``int64`` (range 0..255000)."""
    img = np.asarray(img)
    wr, wg, wb = LUMA_WEIGHTS_MILLI
    rgb = img.astype(np.int64)
    return wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]


def luma_array(img):
    return luma_milli(img) / 1000.0


# -- PNM --------------------------------------------------------------------

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _parse_pnm(data, path):
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise ImageFormatError(f"{path}: unsupported PNM type {magic!r}")
    pos = 2
    fields = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if m is None or not m.group(1).isdigit():
            raise ImageFormatError(f"{path}: malformed header")
        fields.append(int(m.group(1)))
        pos = m.end()
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\n", b"\r"):
        raise ImageFormatError(f"{path}: malformed header")
    pos += 1
    width, height, maxval = fields
    if width == 0 or height == 0:
        raise ImageFormatError(f"{path}: zero-dimension image")
    if not 0 < maxval < 65536:
        raise ImageFormatError(f"{path}: malformed header (maxval {maxval})")

    channels = 3 if magic == b"P6" else 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    count = width * height * channels
    need = count * dtype.itemsize
    if len(data) - pos < need:
        raise ImageFormatError(f"{path}: truncated raster data")
    raster = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    if dtype.itemsize == 2:
        raster = raster >> 8
    raster = raster.astype(np.uint8)
    shape = (height, width, 3) if channels == 3 else (height, width)
    return raster.reshape(shape)


def _write_pnm(arr, path):
    magic = b"P6" if arr.ndim == 3 else b"P5"
    height, width = arr.shape[:2]
    header = b"%s\n%d %d\n255\n" % (magic, width, height)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(arr, dtype=np.uint8).tobytes())


# -- PNG --------------------------------------------------------------------


def _read_png(path, gray):
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode in ("I;16", "I;16B", "I;16L", "I"):
                arr = (np.asarray(im).astype(np.int64) >> 8).clip(0, 255)
                arr = arr.astype(np.uint8)
                if not gray:
                    arr = np.repeat(arr[..., None], 3, axis=2)
                return arr
            if gray:
                if mode not in ("L", "1", "P", "LA"):
                    raise ImageFormatError(
                        f"{path}: expected a grayscale PNG, got mode {mode}"
                    )
                return np.asarray(im.convert("L"), dtype=np.uint8)
            return np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (OSError, SyntaxError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise ImageFormatError(f"{path}: cannot decode PNG ({exc})") from exc


def _read(path, gray):
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(PNG_MAGIC):
        arr = _read_png(path, gray)
    elif data[:2] in (b"P5", b"P6"):
        arr = _parse_pnm(data, path)
    elif data[:1] == b"P" and data[1:2].isdigit():
        raise ImageFormatError(f"{path}: unsupported PNM type {data[:2]!r}")
    else:
        raise ImageFormatError(f"{path}: unsupported format")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ImageFormatError(f"{path}: zero-dimension image")
    if gray and arr.ndim == 3:
        raise ImageFormatError(f"{path}: expected a single-channel map, got RGB")
    if not gray and arr.ndim == 2:
        arr = np.repeat(arr[..., None], 3, axis=2)
    return np.ascontiguousarray(arr)


def load_image(path):
    """Decode a PNG or binary PPM/PGM file into an ``(H, W, 3)`` uint8 array.

    16-bit sources keep their high byte.
    """
    return _read(path, gray=False)


def load_graymap(path):
    """Decode an 8- or 16-bit grayscale PNG or a binary PGM into ``(H, W)`` uint8."""
    return _read(path, gray=True)


def _write(arr, path, gray):
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".png":
        Image.fromarray(arr).save(path, format="PNG")
    elif ext in (".ppm", ".pgm", ".pnm"):
        if ext == ".ppm" and gray:
            raise ImageFormatError(f"{path}: gray maps are written as .pgm or .png")
        if ext == ".pgm" and not gray:
            raise ImageFormatError(f"{path}: RGB images are written as .ppm or .png")
        _write_pnm(arr, path)
    else:
        raise ImageFormatError(f"{path}: unsupported output extension {ext!r}")


def save_image(img, path):
    _write(check_rgb_image(img), os.fspath(path), gray=False)


def save_graymap(values, path):
    _write(check_gray_map(values), os.fspath(path), gray=True)
