"""Colour refinement over a fixed family of maps, plus a tiny worker-pool helper."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def refine(colors, maps, rounds: int | None = None) -> np.ndarray:
    """Refine ``colors`` until stable (or for ``rounds`` rounds).

    Each round recolours point ``x`` by ``(c[x], c[m[x]] for m in maps)``. New
    colour ids are ranks of these keys, so the result depends only on the
    structure and not on how points are numbered.
    """
    c = np.unique(np.asarray(colors), return_inverse=True)[1].astype(np.int64).ravel()
    maps = [np.asarray(m, dtype=np.int64) for m in maps]
    k = int(c.max()) + 1 if len(c) else 0
    r = 0
    while rounds is None or r < rounds:
        c_new = c
        for m in maps:
            c_new = _pair_rank(c_new, c[m])
        k_new = int(c_new.max()) + 1 if len(c_new) else 0
        c = c_new
        r += 1
        if k_new == k:
            break
        k = k_new
    return c


def _pair_rank(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Dense ranks of the pairs ``(x[i], y[i])`` in lexicographic order."""
    key = x * (int(y.max()) + 1) + y
    return np.unique(key, return_inverse=True)[1].astype(np.int64).ravel()


def smallest_class(colors: np.ndarray) -> tuple[int, list[int]]:
    """(base point, its colour class): rarest colour, ties broken by smallest member."""
    counts = np.bincount(colors)
    best = None
    for x in range(len(colors)):
        key = (counts[colors[x]], x)
        if best is None or key < best:
            best = key
    base = best[1]
    members = np.nonzero(colors == colors[base])[0].tolist()
    return base, members


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DESSINFORGE_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """``list(map(fn, items))``, run on a thread pool when DESSINFORGE_THREADS > 1."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
