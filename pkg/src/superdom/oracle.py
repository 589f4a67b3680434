"""Unpruned power-set oracle for the three domination parameters.

Deliberately naive and independent of :mod:`superdom.solvers` and the
kernels: plain Python sets, every subset, definitions taken literally.
"""

from itertools import combinations

from .graph import Graph


def _subsets(n):
    for k in range(n + 1):
        yield from combinations(range(n), k)


def _nbrs(g: Graph):
    return [set(g.neighbors(v)) for v in range(g.n)]


def oracle_parameters(g: Graph) -> dict[str, int]:
    """Return ``{"gamma", "gamma_t", "gamma_sp"}`` by scanning all ``2**n`` subsets."""
    nb = _nbrs(g)
    verts = set(range(g.n))
    best = {"gamma": g.n + 1, "gamma_t": g.n + 1, "gamma_sp": g.n + 1}
    for sub in _subsets(g.n):
        s = set(sub)
        out = verts - s
        size = len(s)
        if all(nb[u] & s for u in out):
            best["gamma"] = min(best["gamma"], size)
        if all(nb[u] & s for u in verts):
            best["gamma_t"] = min(best["gamma_t"], size)
        if all(any(nb[v] & out == {u} for v in nb[u] & s) for u in out):
            best["gamma_sp"] = min(best["gamma_sp"], size)
    return best
