"""Turn any minimum super dominating set of a tree into one whose complement holds a given leaf.

The tree is rooted at the leaf ``v`` with support ``u``. Three situations:

* ``v`` already lies outside the set: nothing to do.
* ``u`` lies outside the set: ``u`` and ``v`` trade places and the damage is
  repaired downwards by a sequence of swaps along private-neighbour chains.
* both lie in the set: some child of ``u`` outside the set has ``u`` as its
  private neighbour, and that child trades places with ``v``.

Each output is re-validated; anything unexpected raises
:class:`~superdom.errors.TheoremViolation` rather than being patched up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotATreeError, PreconditionError, TheoremViolation
from .graph import Graph, VertexSet, is_tree
from .solvers import analyze_sp_set, gamma_sp, gamma_sp_witness, is_super_dominating


@dataclass(frozen=True)
class RootedView:
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]


def rooted_view(t: Graph, root: int) -> RootedView:
    parent = [-1] * t.n
    children: list[list[int]] = [[] for _ in range(t.n)]
    seen = [False] * t.n
    seen[root] = True
    stack = [root]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                children[x].append(y)
                stack.append(y)
    return RootedView(root, tuple(parent), tuple(tuple(sorted(c)) for c in children))


def _fail(t: Graph, msg: str):
    raise TheoremViolation(msg, t)


def _repair_downwards(t, view, sbar, epn, p_set, u, v):
    """Swap procedure for the case where the support ``u`` is outside the set.

    Returns the new complement. Levels are kept on a stack; an exhausted
    level is popped, which is the "i := i - 1" bookkeeping.
    """
    kids = view.children
    h = (set(sbar) - {u}) | {v}
    stack = [[c for c in kids[u] if c in sbar]]
    steps = 0
    while stack:
        level = stack[-1]
        if not level:
            stack.pop()
            continue
        steps += 1
        if steps > 4 * t.n:
            _fail(t, "swap procedure did not terminate within 4n steps")
        probe = min(level)
        level.remove(probe)
        if probe in sbar:
            x = probe
            ys = [c for c in kids[x] if c in epn[x]]
            if not ys:
                _fail(t, f"vertex {x} has no private neighbour among its children")
            y = ys[0]
            h.discard(x)
            h.add(y)
            stack.append([c for c in kids[x] if c in sbar])
            stack.append([c for c in kids[y] if c in p_set])
        else:
            w = probe
            zs = [c for c in kids[w] if c in sbar]
            if not zs:
                _fail(t, f"private neighbour {w} has no child outside the set")
            z = zs[0]
            h.discard(z)
            h.add(w)
            stack.append([c for c in kids[w] if c in p_set])
            stack.append([c for c in kids[z] if c in sbar])
    return h


def normalize_for_leaf(t: Graph, s, v: int) -> VertexSet:
    """A minimum super dominating set of the same size as ``s`` whose complement contains ``v``."""
    if not is_tree(t) or t.n < 2:
        raise NotATreeError("normalization needs a tree of order >= 2")
    if t.degree(v) != 1:
        raise PreconditionError(f"vertex {v} is not a leaf")
    s = s if isinstance(s, VertexSet) else VertexSet.of(t.n, s)
    if not is_super_dominating(t, s):
        raise PreconditionError("set is not super dominating")
    if len(s) != gamma_sp(t):
        raise PreconditionError("set is not a minimum super dominating set")

    if v not in s:
        return s
    info = analyze_sp_set(t, s)
    sbar = set(info.sbar)
    p_set = set(info.p_set)
    epn = {x: set(pn) for x, pn in info.epn.items()}
    view = rooted_view(t, v)
    u = t.adj[v][0]

    if u in sbar:
        h = _repair_downwards(t, view, sbar, epn, p_set, u, v)
    else:
        private_kids = [c for c in view.children[u] if c in sbar and u in epn[c]]
        if private_kids:
            h = (sbar - {private_kids[0]}) | {v}
        elif not any(c in p_set for c in view.children[u]):
            _fail(t, f"support {u} is not private to any child and the set is not minimum")
        else:
            _fail(t, f"support {u} reached the decomposition subcase, which needs a non-minimum set")

    out = VertexSet.of(t.n, h).complement()
    if len(out) != len(s) or v in out or not is_super_dominating(t, out):
        _fail(t, f"normalization for leaf {v} produced an invalid set {sorted(out)}")
    return out


def exists_normalized(t: Graph, v: int) -> VertexSet:
    return normalize_for_leaf(t, gamma_sp_witness(t), v)
