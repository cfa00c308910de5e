"""Slow, independent reference implementations used as test oracles.

Nothing here imports from the package's numba kernels; each routine follows
the textual rule directly in plain Python.
"""

import math
from collections import deque
from fractions import Fraction


def luma_exact(px):
    r, g, b = (int(c) for c in px)
    return Fraction(299 * r + 587 * g + 114 * b, 1000)


def flood_fill_labels(img):
    """4-connected components of equal brightness, labelled in scan order."""
    h, w = len(img), len(img[0])
    lum = [[luma_exact(img[y][x]) for x in range(w)] for y in range(h)]
    labels = [[-1] * w for _ in range(h)]
    n = 0
    for y in range(h):
        for x in range(w):
            if labels[y][x] >= 0:
                continue
            labels[y][x] = n
            queue = deque([(y, x)])
            while queue:
                cy, cx = queue.popleft()
                for ny, nx in ((cy - 1, cx), (cy + 1, cx), (cy, cx - 1), (cy, cx + 1)):
                    if 0 <= ny < h and 0 <= nx < w and labels[ny][nx] < 0:
                        if lum[ny][nx] == lum[cy][cx]:
                            labels[ny][nx] = n
                            queue.append((ny, nx))
            n += 1
    return labels


def region_growing_reference(img, delta):
    """Plain-Python replay of the scan with exact rational class means.

    Returns ``(labels, insertions)`` where ``insertions`` lists, for every
    pixel that joined an existing class, its deviation from that class mean
    at insertion time.
    """
    h, w = len(img), len(img[0])
    delta = Fraction(delta)
    lum = [[luma_exact(img[y][x]) for x in range(w)] for y in range(h)]
    cls = [[None] * w for _ in range(h)]
    # class id -> [sum, count] or ("alias", other id)
    classes = {}
    alias = {}

    def root(c):
        while c in alias:
            c = alias[c]
        return c

    def mean(c):
        s, k = classes[c]
        return s / k

    insertions = []
    next_id = 0

    def new_class(v):
        nonlocal next_id
        classes[next_id] = [v, 1]
        next_id += 1
        return next_id - 1

    def add(c, v):
        insertions.append(abs(v - mean(c)))
        classes[c][0] += v
        classes[c][1] += 1
        return c

    for y in range(h):
        for x in range(w):
            v = lum[y][x]
            if x == 0 and y == 0:
                c = new_class(v)
            elif y == 0 or x == 0:
                nb = root(cls[y][x - 1] if y == 0 else cls[y - 1][x])
                c = add(nb, v) if abs(v - mean(nb)) <= delta else new_class(v)
            else:
                cl = root(cls[y][x - 1])
                cu = root(cls[y - 1][x])
                dl = abs(v - mean(cl))
                du = abs(v - mean(cu))
                ok_l, ok_u = dl <= delta, du <= delta
                if cl == cu:
                    c = add(cl, v) if ok_l else new_class(v)
                elif ok_l and ok_u:
                    if abs(mean(cl) - mean(cu)) <= delta:
                        keep, gone = min(cl, cu), max(cl, cu)
                        classes[keep][0] += classes[gone][0]
                        classes[keep][1] += classes[gone][1]
                        del classes[gone]
                        alias[gone] = keep
                        c = add(keep, v)
                    else:
                        c = add(cl if dl <= du else cu, v)
                elif ok_l:
                    c = add(cl, v)
                elif ok_u:
                    c = add(cu, v)
                else:
                    c = new_class(v)
            cls[y][x] = c

    remap = {}
    labels = [[0] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            r = root(cls[y][x])
            if r not in remap:
                remap[r] = len(remap)
            labels[y][x] = remap[r]
    return labels, insertions


def same_partition(a, b):
    """True when two label grids induce the same partition of the pixels."""
    fwd, bwd = {}, {}
    for ra, rb in zip(a, b):
        for la, lb in zip(ra, rb):
            la, lb = int(la), int(lb)
            if fwd.setdefault(la, lb) != lb or bwd.setdefault(lb, la) != la:
                return False
    return True


def bilateral_direct(depth, guide, radius, sigma_s, sigma_c, squared=False):
    """Direct double-loop evaluation of the normalized cross-bilateral sum."""
    h, w = len(depth), len(depth[0])
    lum = [[float(luma_exact(guide[y][x])) for x in range(w)] for y in range(h)]
    out = [[0.0] * w for _ in range(h)]
    for yi in range(h):
        for xi in range(w):
            a = 0.0
            n = 0.0
            for yj in range(max(0, yi - radius), min(h, yi + radius + 1)):
                for xj in range(max(0, xi - radius), min(w, xi + radius + 1)):
                    ds = (xj - xi) ** 2 + (yj - yi) ** 2
                    dc = (lum[yj][xj] - lum[yi][xi]) ** 2
                    if not squared:
                        ds = math.sqrt(ds)
                        dc = math.sqrt(dc)
                    wgt = math.exp(-ds / (2 * sigma_s**2) - dc / (2 * sigma_c**2))
                    a += float(depth[yj][xj]) * wgt
                    n += wgt
            out[yi][xi] = a / n
    return out


def round_half_up(q):
    return math.floor(q + Fraction(1, 2))


def warp_scalar(x, d, basis, screen):
    """Target columns from the piecewise parallax formula, in exact arithmetic."""
    half = Fraction(basis) / 2
    if d > screen:
        s = half * Fraction(d, 255)
        return round_half_up(x + s), round_half_up(x - s)
    s = half * (1 - Fraction(d, 255))
    return round_half_up(x - s), round_half_up(x + s)


def warp_replay(img, depth, basis, screen):
    """Forward warp by explicit per-target candidate lists (nearest wins, then rightmost)."""
    h, w = len(img), len(img[0])
    views = []
    for side in (0, 1):
        view = [[(0, 0, 0)] * w for _ in range(h)]
        damage = [[True] * w for _ in range(h)]
        for y in range(h):
            cands = {}
            for x in range(w):
                t = warp_scalar(x, int(depth[y][x]), basis, screen)[side]
                if 0 <= t < w:
                    cands.setdefault(t, []).append((int(depth[y][x]), x))
            for t, lst in cands.items():
                _, sx = max(lst)
                view[y][t] = tuple(int(c) for c in img[y][sx])
                damage[y][t] = False
        views.append((view, damage))
    return views


def inpaint_simulation(img, damage):
    """Step-by-step replay of the recovery wave; returns (image, per-pass counts)."""
    h, w = len(img), len(img[0])
    out = [[list(int(c) for c in img[y][x]) for x in range(w)] for y in range(h)]
    dmg = [[bool(damage[y][x]) for x in range(w)] for y in range(h)]
    todo = [(y, x) for y in range(h) for x in range(w) if dmg[y][x]]
    counts = []
    while todo:
        rest = []
        for y, x in todo:
            nbrs = [
                (y + dy, x + dx)
                for dy in (-1, 0, 1)
                for dx in (-1, 0, 1)
                if (dy or dx) and 0 <= y + dy < h and 0 <= x + dx < w
                and not dmg[y + dy][x + dx]
            ]
            if len(nbrs) >= 2:
                for ch in range(3):
                    mean = Fraction(sum(out[ny][nx][ch] for ny, nx in nbrs), len(nbrs))
                    out[y][x][ch] = round_half_up(mean)
                dmg[y][x] = False
            else:
                rest.append((y, x))
        if len(rest) == len(todo):
            raise RuntimeError("unrecoverable damage")
        counts.append(len(todo) - len(rest))
        todo = rest
    return out, counts
