"""Row-band data parallelism for the per-pixel stages.

Kernels are numba functions compiled with ``nogil=True`` that fill rows
``[y0, y1)`` of a preallocated output. Each output row is written by exactly
one band and depends only on read-only inputs, so the result is identical for
any worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def default_workers():
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return max(1, os.cpu_count() or 1)


def row_bands(height, workers):
    """Split ``range(height)`` into at most ``workers`` contiguous bands."""
    n = max(1, min(workers, height))
    step, extra = divmod(height, n)
    bands = []
    y0 = 0
    for i in range(n):
        y1 = y0 + step + (1 if i < extra else 0)
        bands.append((y0, y1))
        y0 = y1
    return bands


def run_row_bands(kernel, height, workers, *args):
    """Call ``kernel(*args, y0, y1)`` over row bands, concurrently if ``workers > 1``."""
    bands = row_bands(height, workers)
    if len(bands) == 1:
        kernel(*args, 0, height)
        return
    with ThreadPoolExecutor(max_workers=len(bands)) as pool:
        futures = [pool.submit(kernel, *args, y0, y1) for y0, y1 in bands]
        for fut in futures:
            fut.result()
