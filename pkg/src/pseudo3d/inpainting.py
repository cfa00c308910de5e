"""Hole filling by an inward wave from the undamaged border.

Damaged pixels are visited in row-major order, pass after pass. A pixel with
at least two undamaged 8-neighbours takes the rounded per-channel mean of
those neighbours and counts as undamaged immediately, for the rest of the
same pass as well.
"""

import numpy as np
from numba import njit

from ._validation import check_mask, check_rgb_image

__all__ = ["InpaintingError", "inpaint", "inpaint_passes"]

MIN_UNDAMAGED_NEIGHBORS = 2


class InpaintingError(RuntimeError):
    pass


@njit(cache=True, nogil=True)
def _wave(img, dmg, ys, xs, min_neighbors):
    height, width = dmg.shape
    n = ys.shape[0]
    passes = np.zeros(n + 1, np.int64)
    n_passes = 0
    while n > 0:
        kept = 0
        for k in range(n):
            y = ys[k]
            x = xs[k]
            cnt = 0
            s0 = 0
            s1 = 0
            s2 = 0
            for dy in range(-1, 2):
                yy = y + dy
                if yy < 0 or yy >= height:
                    continue
                for dx in range(-1, 2):
                    xx = x + dx
                    if (dy == 0 and dx == 0) or xx < 0 or xx >= width:
                        continue
                    if not dmg[yy, xx]:
                        cnt += 1
                        s0 += img[yy, xx, 0]
                        s1 += img[yy, xx, 1]
                        s2 += img[yy, xx, 2]
            if cnt >= min_neighbors:
                dmg[y, x] = False
                img[y, x, 0] = (2 * s0 + cnt) // (2 * cnt)
                img[y, x, 1] = (2 * s1 + cnt) // (2 * cnt)
                img[y, x, 2] = (2 * s2 + cnt) // (2 * cnt)
            else:
                ys[kept] = y
                xs[kept] = x
                kept += 1
        if kept == n:
            return passes[:n_passes], False
        passes[n_passes] = n - kept
        n_passes += 1
        n = kept
    return passes[:n_passes], True


def inpaint_passes(img, damage):
    """Inpaint and also report how many pixels each pass recovered.

    Returns
    -------
    out : ndarray of shape (height, width, 3), uint8
    recovered : list of int
        Pixels recovered in pass 1, 2, ... (empty when nothing was damaged).

    Raises
    ------
    InpaintingError
        If a full pass recovers nothing while damage remains, including the
        case of an entirely damaged image.
    """
    img = check_rgb_image(img)
    damage = check_mask(damage, img.shape)
    out = img.copy()
    if not damage.any():
        return out, []
    if damage.all():
        raise InpaintingError("unrecoverable damage: every pixel is damaged")
    dmg = damage.copy()
    ys, xs = np.nonzero(dmg)
    passes, ok = _wave(
        out, dmg, ys.astype(np.int64), xs.astype(np.int64), MIN_UNDAMAGED_NEIGHBORS
    )
    if not ok:
        raise InpaintingError(
            f"unrecoverable damage: {int(dmg.sum())} pixels have fewer than "
            f"{MIN_UNDAMAGED_NEIGHBORS} undamaged neighbours"
        )
    return out, [int(p) for p in passes]


def inpaint(img, damage):
    """Fill the pixels flagged in ``damage`` from their undamaged neighbours.

    Undamaged pixels are returned unchanged.
    """
    return inpaint_passes(img, damage)[0]
