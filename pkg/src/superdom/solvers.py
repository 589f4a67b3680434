"""Exact domination, total domination and super domination numbers.

Minimum sets are found by exhaustive bit-mask search (see
:mod:`superdom.kernels`). Ties are broken towards the numerically smallest
mask, so every witness is reproducible.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field

import numpy as np

from .errors import InstanceTooLargeError, PreconditionError, UndefinedParameterError
from .graph import Graph, VertexSet
from .kernels import get_backend

__all__ = [
    "MAX_SEARCH_N",
    "MAX_ENUM_N",
    "SpSetAnalysis",
    "is_dominating",
    "is_total_dominating",
    "is_super_dominating",
    "external_private_neighbors",
    "gamma",
    "gamma_witness",
    "gamma_t",
    "gamma_t_witness",
    "gamma_sp",
    "gamma_sp_witness",
    "all_gamma_sp_sets",
    "analyze_sp_set",
    "injected_fault",
]

MAX_SEARCH_N = 40
MAX_ENUM_N = 24

# Test hook: lets the harness's sensitivity tests plant a known bug.
_fault: str | None = None


@contextlib.contextmanager
def injected_fault(name: str | None = "sp-off-by-one"):
    """Temporarily plant a fault in :func:`is_super_dominating`.

    ``"sp-off-by-one"`` stops the private-neighbour scan one vertex early.
    ``"kernel-off-by-one"`` hides the last vertex from the minimum-set search.
    """
    global _fault
    old, _fault = _fault, name
    try:
        yield
    finally:
        _fault = old


def _full(n: int) -> int:
    return (1 << n) - 1


def _bits(g: Graph, d) -> int:
    if isinstance(d, VertexSet):
        if d.n != g.n:
            raise ValueError("vertex set does not match the graph")
        return d.bits
    return VertexSet.of(g.n, d).bits


def is_dominating(g: Graph, d) -> bool:
    bits = _bits(g, d)
    acc = bits
    for v in VertexSet(bits, g.n):
        acc |= g.nbr_bits[v]
    return acc == _full(g.n)


def is_total_dominating(g: Graph, d) -> bool:
    acc = 0
    for v in VertexSet(_bits(g, d), g.n):
        acc |= g.nbr_bits[v]
    return acc == _full(g.n)


def is_super_dominating(g: Graph, s) -> bool:
    """Every vertex outside ``s`` has a neighbour in ``s`` whose only outside neighbour it is."""
    sbar = _full(g.n) & ~_bits(g, s)
    last = g.n - 1 if _fault == "sp-off-by-one" else g.n
    covered = 0
    for v in range(last):
        if sbar >> v & 1:
            continue
        c = g.nbr_bits[v] & sbar
        if c and not c & (c - 1):
            covered |= c
    return covered == sbar


def external_private_neighbors(g: Graph, s, u: int) -> VertexSet:
    """Vertices ``v`` in ``s`` with ``N(v)`` meeting the complement exactly in ``{u}``."""
    sbits = _bits(g, s)
    sbar = _full(g.n) & ~sbits
    out = 0
    for v in g.adj[u]:
        if sbits >> v & 1 and g.nbr_bits[v] & sbar == 1 << u:
            out |= 1 << v
    return VertexSet(out, g.n)


def _require_defined(g: Graph) -> None:
    if g.n == 0:
        raise UndefinedParameterError("undefined parameter: empty graph")
    iso = g.isolated_vertices()
    if iso:
        raise UndefinedParameterError(f"undefined parameter: vertex {iso[0]} is isolated")
    if g.n > MAX_SEARCH_N:
        raise InstanceTooLargeError(f"instance too large: n={g.n} > {MAX_SEARCH_N}")


def _greedy_cover(rows: list[int], n: int) -> int:
    todo = _full(n)
    chosen = 0
    while todo:
        best, gain = -1, 0
        for v in range(n):
            c = (rows[v] & todo).bit_count()
            if c > gain:
                best, gain = v, c
        chosen |= 1 << best
        todo &= ~rows[best]
    return chosen


def _min_cover(g: Graph, rows: list[int]) -> VertexSet:
    upper = _greedy_cover(rows, g.n)
    cover = np.array(rows, dtype=np.int64)
    kernels = get_backend()
    for k in range(1, upper.bit_count()):
        mask = kernels.first_cover(cover, g.n, k)
        if mask >= 0:
            return VertexSet(int(mask), g.n)
    return VertexSet(upper, g.n)


def gamma_witness(g: Graph) -> VertexSet:
    _require_defined(g)
    memo = g._memo
    if "gamma" not in memo:
        memo["gamma"] = _min_cover(g, [g.nbr_bits[v] | 1 << v for v in range(g.n)])
    return memo["gamma"]


def gamma(g: Graph) -> int:
    return len(gamma_witness(g))


def gamma_t_witness(g: Graph) -> VertexSet:
    _require_defined(g)
    memo = g._memo
    if "gamma_t" not in memo:
        memo["gamma_t"] = _min_cover(g, list(g.nbr_bits))
    return memo["gamma_t"]


def gamma_t(g: Graph) -> int:
    return len(gamma_t_witness(g))


def gamma_sp_witness(g: Graph) -> VertexSet:
    """An optimal super dominating set.

    Complements are searched from the largest possible size ``n // 2``
    downwards; the first feasible one (smallest mask) is returned.
    """
    _require_defined(g)
    if g.n < 2:
        raise UndefinedParameterError("undefined parameter: n < 2")
    memo = g._memo
    if "gamma_sp" not in memo:
        nbr, width = g.nbr_array(), g.n
        if _fault == "kernel-off-by-one":
            nbr, width = nbr[:-1], g.n - 1
        kernels = get_backend()
        for k in range(g.n // 2, -1, -1):
            sbar = kernels.first_sp_complement(nbr, width, k)
            if sbar >= 0:
                memo["gamma_sp"] = VertexSet(_full(g.n) & ~int(sbar), g.n)
                break
    return memo["gamma_sp"]


def gamma_sp(g: Graph) -> int:
    return len(gamma_sp_witness(g))


def all_gamma_sp_sets(g: Graph) -> list[VertexSet]:
    """Every minimum super dominating set, in ascending bit-set order."""
    if g.n > MAX_ENUM_N:
        raise InstanceTooLargeError(f"instance too large: n={g.n} > {MAX_ENUM_N}")
    memo = g._memo
    if "sp_sets" not in memo:
        k = g.n - gamma_sp(g)
        sbars = get_backend().all_sp_complements(g.nbr_array(), g.n, k)
        full = _full(g.n)
        memo["sp_sets"] = tuple(sorted(VertexSet(full & ~int(x), g.n) for x in sbars))
    return list(memo["sp_sets"])


@dataclass(frozen=True)
class SpSetAnalysis:
    s: VertexSet
    sbar: VertexSet
    epn: dict[int, VertexSet] = field(hash=False)
    p_set: VertexSet
    q_set: VertexSet
    u_set: VertexSet


def analyze_sp_set(g: Graph, s) -> SpSetAnalysis:
    """External private neighbours of each complement vertex and the sets P_S, Q_S, U_S.

    ``u_set`` is the union of the single private neighbours of the vertices
    in ``q_set``.
    """
    sset = VertexSet(_bits(g, s), g.n)
    if not is_super_dominating(g, sset):
        raise PreconditionError("set is not super dominating")
    sbar = sset.complement()
    epn = {u: external_private_neighbors(g, sset, u) for u in sbar}
    p = q = uu = 0
    for u, pn in epn.items():
        p |= pn.bits
        if len(pn) == 1:
            q |= 1 << u
            uu |= pn.bits
    return SpSetAnalysis(sset, sbar, epn, VertexSet(p, g.n), VertexSet(q, g.n), VertexSet(uu, g.n))
