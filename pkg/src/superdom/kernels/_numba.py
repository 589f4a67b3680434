"""Bit-mask search kernels compiled with numba.

Masks of a fixed popcount are walked in ascending integer order with
Gosper's hack, so results match the numpy backend exactly.
"""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, inline="always")
def _next_combination(x):
    c = x & -x
    r = x + c
    return (((r ^ x) >> 2) // c) | r


@njit(cache=True)
def _covers(cover, n, mask):
    acc = 0
    for v in range(n):
        if (mask >> v) & 1:
            acc |= cover[v]
    return acc == (1 << n) - 1


@njit(cache=True)
def sp_feasible(nbr, n, sbar):
    covered = 0
    for v in range(n):
        if (sbar >> v) & 1:
            continue
        c = nbr[v] & sbar
        if c != 0 and (c & (c - 1)) == 0:
            covered |= c
    return covered == sbar


@njit(cache=True)
def first_cover(cover, n, k):
    """Smallest mask with ``k`` bits whose cover rows OR to the full set, or -1."""
    if k == 0:
        return 0 if n == 0 else -1
    if k > n:
        return -1
    limit = 1 << n
    x = (1 << k) - 1
    while x < limit:
        if _covers(cover, n, x):
            return x
        x = _next_combination(x)
    return -1


@njit(cache=True)
def first_sp_complement(nbr, n, k):
    """Smallest complement mask with ``k`` bits leaving a super dominating set, or -1."""
    if k == 0:
        return 0
    if k > n:
        return -1
    limit = 1 << n
    x = (1 << k) - 1
    while x < limit:
        if sp_feasible(nbr, n, x):
            return x
        x = _next_combination(x)
    return -1


@njit(cache=True)
def all_sp_complements(nbr, n, k):
    out = []
    if k == 0:
        out.append(0)
    elif k <= n:
        limit = 1 << n
        x = (1 << k) - 1
        while x < limit:
            if sp_feasible(nbr, n, x):
                out.append(x)
            x = _next_combination(x)
    res = np.empty(len(out), dtype=np.int64)
    for i in range(len(out)):
        res[i] = out[i]
    return res
