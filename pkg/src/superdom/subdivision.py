"""Super domination subdivision number of trees and the Class 1 / Class 2 split."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotATreeError, PreconditionError, TheoremViolation
from .graph import Graph, diameter, is_tree, longest_path, subdivide
from .solvers import gamma_sp

Edge = tuple[int, int]


@dataclass(frozen=True)
class SubdivisionResult:
    base_gamma_sp: int
    sd: int
    witness_edges: tuple[Edge, ...]
    new_gamma_sp: int

    @property
    def class_label(self) -> str:
        return f"Class{self.sd}" if self.sd in (1, 2) else "unclassified"


def _require_tree(t: Graph) -> None:
    if not is_tree(t) or t.n < 2:
        raise NotATreeError("subdivision number is only defined here for trees of order >= 2")


def single_edge_effects(t: Graph) -> list[tuple[Edge, int]]:
    """γ_sp after subdividing each edge alone, in edge order."""
    _require_tree(t)
    return [(e, gamma_sp(subdivide(t, [e]))) for e in t.edges]


def subdivision_number(t: Graph, max_edges: int | None = None) -> SubdivisionResult | None:
    """Exact search: edge sets of size 1, 2, ... in lexicographic order, first witness wins.

    Returns None when nothing up to ``max_edges`` raises γ_sp. Subdividing
    every edge always works, so the unbounded search always succeeds.
    """
    _require_tree(t)
    base = gamma_sp(t)
    top = t.m if max_edges is None else min(max_edges, t.m)
    for size in range(1, top + 1):
        for es in combinations(t.edges, size):
            new = gamma_sp(subdivide(t, es))
            if new > base:
                return SubdivisionResult(base, size, es, new)
    return None


def sd_gamma_sp(t: Graph) -> SubdivisionResult:
    """Subdivision number under the at-most-two-edges bound for trees.

    When neither a single edge nor a pair works the bound is broken; the
    exact value is computed and reported in a :class:`TheoremViolation`.
    """
    found = subdivision_number(t, max_edges=2)
    if found is None:
        exact = subdivision_number(t)
        raise TheoremViolation(
            f"no set of at most two subdivided edges raises gamma_sp (exact value {exact.sd})",
            t,
        )
    return found


def longest_path_edges(t: Graph) -> tuple[Edge, Edge]:
    """The second and third edges of the deterministic longest path."""
    _require_tree(t)
    if diameter(t) < 4:
        raise PreconditionError("construction inapplicable: diameter < 4")
    p = longest_path(t)
    return (p[1], p[2]), (p[2], p[3])


def longest_path_pair_check(t: Graph) -> bool:
    """Does subdividing ``u2u3`` and ``u3u4`` of a longest path ``u1u2...`` raise γ_sp?"""
    pair = longest_path_edges(t)
    return gamma_sp(subdivide(t, pair)) > gamma_sp(t)
