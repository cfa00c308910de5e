"""Input validation helpers shared by every stage.

Rasters are plain numpy arrays:

* RGB image: ``(height, width, 3)`` ``uint8``
* gray map (depth): ``(height, width)`` ``uint8``
* bit mask (damage): ``(height, width)`` ``bool``

Pixel ``(x, y)`` lives at ``arr[y, x]``; row 0 is the top of the image.
"""

import numpy as np


def check_rgb_image(img, name="img"):
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"{name} must have shape (height, width, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} has a zero dimension: {arr.shape}")
    if arr.dtype != np.uint8:
        arr = _to_uint8(arr, name)
    return np.ascontiguousarray(arr)


def check_gray_map(values, name="depth"):
    arr = np.asarray(values)
    if arr.ndim != 2:
        raise ValueError(f"{name} must have shape (height, width), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} has a zero dimension: {arr.shape}")
    if arr.dtype != np.uint8:
        arr = _to_uint8(arr, name)
    return np.ascontiguousarray(arr)


def check_mask(mask, shape=None, name="damage"):
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"{name} must have shape (height, width), got {arr.shape}")
    if shape is not None and arr.shape != tuple(shape[:2]):
        raise ValueError(
            f"{name} shape {arr.shape} does not match image shape {tuple(shape[:2])}"
        )
    return np.ascontiguousarray(arr, dtype=bool)


def check_same_size(a, b, name_a, name_b):
    if a.shape[:2] != b.shape[:2]:
        raise ValueError(
            f"dimension mismatch: {name_a} is {a.shape[1]}x{a.shape[0]}, "
            f"{name_b} is {b.shape[1]}x{b.shape[0]}"
        )


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_range(value, name, low=None, high=None, low_open=False):
    value = float(value)
    if np.isnan(value):
        raise ValueError(f"{name} must not be NaN")
    if low is not None and (value <= low if low_open else value < low):
        bound = ">" if low_open else ">="
        raise ValueError(f"{name} must be {bound} {low}, got {value}")
    if high is not None and value > high:
        raise ValueError(f"{name} must be <= {high}, got {value}")
    return value


def _to_uint8(arr, name):
    if not np.issubdtype(arr.dtype, np.number) and arr.dtype != bool:
        raise TypeError(f"{name} must be numeric, got dtype {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError(f"{name} values must lie in [0, 255]")
    if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.round(arr)):
        raise ValueError(f"{name} values must be integral")
    return arr.astype(np.uint8)
