"""Pure-numpy fallback for the search kernels.

Candidate masks of one popcount are materialised in ascending order, in
chunks, and checked in a vectorised sweep over the vertices.
"""

from functools import lru_cache

import numpy as np

NAME = "numpy"

_CHUNK_BITS = 20


@lru_cache(maxsize=8)
def _popcounts(n):
    arr = np.arange(1 << n, dtype=np.int64)
    return arr, np.bitwise_count(arr)


def _masks(n, k):
    """Yield int64 arrays covering all masks of popcount ``k`` below ``2**n``, ascending."""
    if n <= _CHUNK_BITS:
        arr, pc = _popcounts(n)
        yield arr[pc == k]
        return
    step = 1 << _CHUNK_BITS
    for start in range(0, 1 << n, step):
        arr = np.arange(start, start + step, dtype=np.int64)
        sel = arr[np.bitwise_count(arr) == k]
        if sel.size:
            yield sel


def _cover_ok(cover, n, masks):
    acc = np.zeros_like(masks)
    for v in range(n):
        hit = (masks >> v) & 1
        acc |= hit * cover[v]
    return acc == (1 << n) - 1


def _sp_ok(nbr, n, sbars):
    covered = np.zeros_like(sbars)
    for v in range(n):
        c = nbr[v] & sbars
        private = (c != 0) & ((c & (c - 1)) == 0) & (((sbars >> v) & 1) == 0)
        covered |= np.where(private, c, 0)
    return covered == sbars


def sp_feasible(nbr, n, sbar):
    return bool(_sp_ok(nbr, n, np.array([sbar], dtype=np.int64))[0])


def first_cover(cover, n, k):
    if k == 0:
        return 0 if n == 0 else -1
    if k > n:
        return -1
    for masks in _masks(n, k):
        ok = np.flatnonzero(_cover_ok(cover, n, masks))
        if ok.size:
            return int(masks[ok[0]])
    return -1


def first_sp_complement(nbr, n, k):
    if k == 0:
        return 0
    if k > n:
        return -1
    for masks in _masks(n, k):
        ok = np.flatnonzero(_sp_ok(nbr, n, masks))
        if ok.size:
            return int(masks[ok[0]])
    return -1


def all_sp_complements(nbr, n, k):
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    if k > n:
        return np.zeros(0, dtype=np.int64)
    parts = [masks[_sp_ok(nbr, n, masks)] for masks in _masks(n, k)]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
