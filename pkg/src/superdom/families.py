"""Constructive tree families: builders, recognisers, certificates and forward closures.

Four families are covered:

``Corona``
    ``H o K1`` for a tree ``H``.
``R``
    grown from ``P2 = a1 b1`` by adding an edge ``aj bj`` joined through
    ``ai aj`` or ``bi bj``.
``T_family``
    labeled trees grown from the labeled ``P6`` (C A B B A C) by hanging
    another labeled ``P6`` on a B vertex through its third vertex.
``U_family``
    grown from a star of order >= 3 by joining the centre of a new star of
    order >= 2 to a vertex ``v`` admitted by some minimum super dominating
    set (see :func:`u1_applicable`).

Recognisers come in two independent flavours: a parameter oracle
(``is_in_R``, ``in_T_by_ratio``, ``recognize_U``) and a constructive
certificate search (``certify_*``). The harness compares them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .enumeration import trees_up_to
from .errors import InstanceTooLargeError, PreconditionError
from .graph import (
    Graph,
    LabeledTree,
    canonical_form,
    corona,
    emit_edge_list,
    is_tree,
    leaf_neighbors,
    leaves,
    parse_edge_list,
    star_graph,
    supports,
    tree_from_canonical,
)
from .solvers import (
    all_gamma_sp_sets,
    analyze_sp_set,
    gamma_sp,
    gamma_t,
    is_total_dominating,
)
from .subdivision import subdivision_number

FAMILIES = ("R", "T_family", "U_family", "Corona")
_ALIASES = {
    "r": "R",
    "t": "T_family",
    "t_family": "T_family",
    "u": "U_family",
    "u_family": "U_family",
    "corona": "Corona",
}
FAMILY_BUDGET = {"R": 16, "T_family": 18, "U_family": 12, "Corona": 16}

P6_STATUS = ("C", "A", "B", "B", "A", "C")


def family_name(name: str) -> str:
    key = _ALIASES.get(name.lower())
    if key is None:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return key


class CertificateError(PreconditionError):
    def __init__(self, message, step=None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)


@dataclass
class FamilyCertificate:
    """Replayable construction sequence.

    ``steps`` refer to vertex ids of the graph being replayed. ``vertex_map``,
    when present, maps each replay id to the id in the certified input tree.
    """

    family: str
    base: dict
    steps: list[dict] = field(default_factory=list)
    vertex_map: list[int] | None = None

    def to_dict(self) -> dict:
        out = {"family": self.family, "base": self.base, "steps": self.steps}
        if self.vertex_map is not None:
            out["vertex_map"] = self.vertex_map
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FamilyCertificate":
        try:
            d = json.loads(text)
            return cls(family_name(d["family"]), d["base"], list(d.get("steps", [])), d.get("vertex_map"))
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None

    def replay(self) -> Graph:
        return replay(self)

    def replay_labeled(self) -> LabeledTree:
        if self.family != "T_family":
            raise CertificateError("only T_family certificates carry labels")
        return _replay_T(self)


# --------------------------------------------------------------------------- corona


def corona_core(t: Graph) -> Graph | None:
    """``H`` with ``t = H o K1``, or None. ``H`` keeps the relative order of ids."""
    if not is_tree(t) or t.n < 2 or t.n % 2:
        return None
    if t.n == 2:
        return Graph(1)
    lv = leaves(t)
    if 2 * len(lv) != t.n:
        return None
    for v in range(t.n):
        if v not in lv and len(leaf_neighbors(t, v)) != 1:
            return None
    h, _ = t.induced(v for v in range(t.n) if v not in lv)
    return h


def is_corona(t: Graph) -> bool:
    return corona_core(t) is not None


def certify_corona(t: Graph) -> FamilyCertificate | None:
    core = corona_core(t)
    if core is None:
        return None
    if t.n == 2:
        return FamilyCertificate("Corona", {"kind": "graph", "edge_list": emit_edge_list(core)}, [], [0, 1])
    inner = [v for v in range(t.n) if t.degree(v) > 1]
    vmap = inner + [leaf_neighbors(t, v)[0] for v in inner]
    return FamilyCertificate("Corona", {"kind": "graph", "edge_list": emit_edge_list(core)}, [], vmap)


# --------------------------------------------------------------------------- R


def build_R(steps) -> Graph:
    """Replay ``R`` steps from ``P2``.

    Pair ``j`` (0-based) is ``a_j = 2j``, ``b_j = 2j + 1``; step ``j`` is
    ``{"attach": x}`` with ``x < 2j``. An even ``x`` is an ``a`` vertex and is
    joined to ``a_j``, an odd one to ``b_j``.
    """
    edges = [(0, 1)]
    for j, step in enumerate(steps, start=1):
        try:
            x = int(step["attach"])
        except (KeyError, TypeError, ValueError):
            raise CertificateError("R step needs an integer 'attach'", j) from None
        if not 0 <= x < 2 * j:
            raise CertificateError(f"attach vertex {x} does not exist yet", j)
        a, b = 2 * j, 2 * j + 1
        edges.append((a, b))
        edges.append((x, a if x % 2 == 0 else b))
    return Graph(2 * (len(steps) + 1), edges)


def is_in_R(t: Graph) -> bool:
    """Membership decided by ``γ_sp(t) = n/2``."""
    if not is_tree(t) or t.n < 2 or t.n % 2:
        return False
    return 2 * gamma_sp(t) == t.n


def _peel_pairs(t: Graph):
    """Order in which (leaf, support) pairs can be stripped down to a single edge.

    Backtracking with a memo of dead ends. Returns ``(leaf, support, attach)``
    triples in removal order, the last one being the base edge, or None.
    """
    dead: set[int] = set()

    def alive_deg(x, alive):
        return (t.nbr_bits[x] & alive).bit_count()

    def rec(alive):
        if alive.bit_count() == 2:
            x = (alive & -alive).bit_length() - 1
            y = alive.bit_length() - 1
            return [(x, y, -1)] if t.has_edge(x, y) else None
        if alive in dead:
            return None
        for x in range(t.n):
            if not alive >> x & 1 or alive_deg(x, alive) != 1:
                continue
            y = (t.nbr_bits[x] & alive).bit_length() - 1
            if alive_deg(y, alive) != 2:
                continue
            z = (t.nbr_bits[y] & alive & ~(1 << x)).bit_length() - 1
            rest = rec(alive & ~(1 << x | 1 << y))
            if rest is not None:
                return [(x, y, z)] + rest
        dead.add(alive)
        return None

    return rec((1 << t.n) - 1)


def certify_R(t: Graph) -> FamilyCertificate | None:
    """Constructive membership proof for ``R`` with a replay-to-input vertex map."""
    if not is_tree(t) or t.n < 2 or t.n % 2:
        return None
    order = _peel_pairs(t)
    if order is None:
        return None
    order.reverse()
    x0, y0, _ = order[0]
    replay_id = {x0: 0, y0: 1}
    steps = []
    for j, (x, y, z) in enumerate(order[1:], start=1):
        zid = replay_id[z]
        steps.append({"attach": zid})
        a, b = 2 * j, 2 * j + 1
        if zid % 2 == 0:
            replay_id[y], replay_id[x] = a, b
        else:
            replay_id[y], replay_id[x] = b, a
    vmap = [0] * t.n
    for orig, rid in replay_id.items():
        vmap[rid] = orig
    return FamilyCertificate("R", {"kind": "P2"}, steps, vmap)


# --------------------------------------------------------------------------- T


def labeled_p6() -> LabeledTree:
    return LabeledTree(Graph(6, [(i, i + 1) for i in range(5)]), P6_STATUS)


def apply_O(lt: LabeledTree, v: int) -> LabeledTree:
    """Hang a labeled ``u1..u6`` path on ``v`` through ``u3``; ``v`` must have status B."""
    if lt.sta(v) != "B":
        raise PreconditionError(f"operation needs a B vertex, vertex {v} has status {lt.sta(v)}")
    m = lt.tree.n
    edges = list(lt.tree.edges) + [(m + i, m + i + 1) for i in range(5)] + [(v, m + 2)]
    return LabeledTree(Graph(m + 6, edges), lt.status + P6_STATUS)


def forced_labeling(t: Graph) -> tuple[str, ...] | None:
    """Leaves C, supports A, everything else B; None if a vertex is both leaf and support."""
    lv, sp = leaves(t), supports(t)
    out = []
    for v in range(t.n):
        if v in lv and v in sp:
            return None
        out.append("C" if v in lv else "A" if v in sp else "B")
    return tuple(out)


def labeling_properties(lt: LabeledTree) -> dict[str, bool]:
    """The six structural properties a member of ``T_family`` should have, keyed a..f."""
    t, st = lt.tree, lt.status
    lv, sp = leaves(t), supports(t)
    a = all((st[v] == "C") == (v in lv) for v in range(t.n))
    b = all((st[v] == "A") == (v in sp) for v in range(t.n))
    c = all(
        t.degree(v) == 2 and sorted(st[w] for w in t.adj[v]) == ["B", "C"] for v in sp
    )
    d = True
    for v in range(t.n):
        if st[v] == "B":
            labels = sorted(st[w] for w in t.adj[v])
            if labels.count("A") != 1 or labels.count("B") != len(labels) - 1:
                d = False
    e = st.count("A") == st.count("B") == st.count("C")
    ab = lt.class_of("A") | lt.class_of("B")
    f = is_total_dominating(t, ab) and len(ab) == gamma_t(t)
    return {"a": a, "b": b, "c": c, "d": d, "e": e, "f": f}


def _valid_forced(t: Graph, st) -> bool:
    for v in range(t.n):
        nb = [st[w] for w in t.adj[v]]
        if st[v] == "A" and sorted(nb) != ["B", "C"]:
            return False
        if st[v] == "B" and (nb.count("A") != 1 or nb.count("B") != len(nb) - 1):
            return False
    return True


def _peel_units(t: Graph, st):
    """Strip labeled P6 units (last-added first) down to the base P6.

    Returns ``(base_path, units)`` with ``units`` in removal order, each as
    ``(attach, (u1, .., u6))``; or None.
    """
    dead: set[int] = set()

    def alive_nb(x, alive):
        return [w for w in t.adj[x] if alive >> w & 1]

    def leaf_of(a, alive):
        cs = [w for w in alive_nb(a, alive) if st[w] == "C"]
        return cs[0] if len(cs) == 1 else None

    def base(alive):
        verts = [v for v in range(t.n) if alive >> v & 1]
        ends = [v for v in verts if len(alive_nb(v, alive)) == 1]
        if len(ends) != 2:
            return None
        path, prev = [min(ends)], -1
        while len(path) < 6:
            nxt = [w for w in alive_nb(path[-1], alive) if w != prev]
            if len(nxt) != 1:
                return None
            prev = path[-1]
            path.append(nxt[0])
        return tuple(path) if tuple(st[v] for v in path) == P6_STATUS else None

    def rec(alive):
        if alive.bit_count() == 6:
            p = base(alive)
            return (p, []) if p else None
        if alive in dead:
            return None
        for p in range(t.n):
            if not alive >> p & 1 or st[p] != "B":
                continue
            nb = alive_nb(p, alive)
            if len(nb) != 3:
                continue
            for q in nb:
                if st[q] != "B" or len(alive_nb(q, alive)) != 2:
                    continue
                aq = [w for w in alive_nb(q, alive) if w != p][0]
                ap = [w for w in nb if st[w] == "A"]
                ext = [w for w in nb if w != q and st[w] == "B"]
                if st[aq] != "A" or len(ap) != 1 or len(ext) != 1:
                    continue
                lp, lq = leaf_of(ap[0], alive), leaf_of(aq, alive)
                if lp is None or lq is None:
                    continue
                unit = (lp, ap[0], p, q, aq, lq)
                rest = alive
                for w in unit:
                    rest &= ~(1 << w)
                x = ext[0]
                if len(alive_nb(x, rest)) < 2:
                    continue
                sub = rec(rest)
                if sub is not None:
                    return sub[0], [(x, unit)] + sub[1]
        dead.add(alive)
        return None

    return rec((1 << t.n) - 1)


def certify_T(t: Graph) -> tuple[LabeledTree, FamilyCertificate] | None:
    """Forced labeling plus a replayable construction, or None when ``t`` is not a member."""
    if not is_tree(t) or t.n < 6 or t.n % 6:
        return None
    st = forced_labeling(t)
    if st is None or not _valid_forced(t, st):
        return None
    found = _peel_units(t, st)
    if found is None:
        return None
    base_path, units = found
    vmap = list(base_path)
    rid = {v: i for i, v in enumerate(base_path)}
    steps = []
    for x, unit in reversed(units):
        steps.append({"attach": rid[x]})
        for w in unit:
            rid[w] = len(vmap)
            vmap.append(w)
    return LabeledTree(t, st), FamilyCertificate("T_family", {"kind": "P6"}, steps, vmap)


def recognize_T(t: Graph) -> bool:
    return certify_T(t) is not None


def in_T_by_ratio(t: Graph) -> bool:
    """Oracle form: ``3 γ_t = 4 γ_sp`` (trees of order >= 3)."""
    return is_tree(t) and t.n >= 3 and 3 * gamma_t(t) == 4 * gamma_sp(t)


def _replay_T(cert: FamilyCertificate) -> LabeledTree:
    lt = labeled_p6()
    for i, step in enumerate(cert.steps, start=1):
        try:
            lt = apply_O(lt, int(step["attach"]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise CertificateError(str(exc), i) from None
    return lt


def deficient_total_set(lt: LabeledTree, v: int):
    """Brute-force a set ``X`` of size ``γ_t - 1`` containing leaf ``v`` that totally
    dominates every vertex except possibly ``v``. Returns it or None."""
    from itertools import combinations

    t = lt.tree
    k = gamma_t(t) - 1
    need = ((1 << t.n) - 1) & ~(1 << v)
    others = [w for w in range(t.n) if w != v]
    for rest in combinations(others, k - 1):
        acc = t.nbr_bits[v]
        for w in rest:
            acc |= t.nbr_bits[w]
        if acc & need == need:
            return {v, *rest}
    return None


# --------------------------------------------------------------------------- U


def _u1_vertices(t: Graph) -> list[bool]:
    memo = t._memo
    if "u1" not in memo:
        ok = [False] * t.n
        for s in all_gamma_sp_sets(t):
            info = analyze_sp_set(t, s)
            for v in range(t.n):
                if ok[v]:
                    continue
                closed = t.nbr_bits[v] | 1 << v
                if closed & info.sbar.bits == 0:
                    ok[v] = True
                elif v not in info.sbar and closed & info.u_set.bits == 0:
                    ok[v] = True
        memo["u1"] = ok
    return memo["u1"]


def u1_applicable(t: Graph, v: int) -> bool:
    """Some minimum super dominating set ``S`` has ``N[v]`` missing the complement,
    or has ``v`` in ``S`` with ``N[v]`` missing ``U_S``."""
    if not 0 <= v < t.n:
        raise PreconditionError(f"vertex {v} not in graph")
    return _u1_vertices(t)[v]


def apply_U1(t: Graph, v: int, star_order: int, check: bool = True) -> Graph:
    """Join the centre of a new star of ``star_order`` vertices to ``v``.

    New centre gets id ``n``, its leaves ``n+1 ..``.
    """
    if star_order < 2:
        raise PreconditionError("star order must be at least two")
    if check and not u1_applicable(t, v):
        raise PreconditionError(f"operation precondition fails at vertex {v}")
    c = t.n
    edges = list(t.edges) + [(v, c)] + [(c, c + i) for i in range(1, star_order)]
    return Graph(t.n + star_order, edges)


def recognize_U(t: Graph) -> bool:
    """Membership decided by the subdivision number being exactly 2."""
    if not is_tree(t) or t.n < 2:
        return False
    return subdivision_number(t).sd == 2


def _star_center(t: Graph, alive: int):
    verts = [v for v in range(t.n) if alive >> v & 1]
    if len(verts) < 3:
        return None
    for c in verts:
        if (t.nbr_bits[c] & alive) == alive & ~(1 << c):
            return c
    return None


def certify_U(t: Graph) -> FamilyCertificate | None:
    """Peel applicable pendant stars back to a star of order >= 3."""
    if not is_tree(t) or t.n < 3:
        return None
    dead: set[int] = set()

    def rec(alive):
        c = _star_center(t, alive)
        if c is not None:
            return (c, [w for w in t.adj[c] if alive >> w & 1]), []
        if alive in dead:
            return None
        for c in range(t.n):
            if not alive >> c & 1:
                continue
            nb = [w for w in t.adj[c] if alive >> w & 1]
            lf = [w for w in nb if (t.nbr_bits[w] & alive).bit_count() == 1]
            inner = [w for w in nb if w not in lf]
            if not lf or len(inner) != 1:
                continue
            rest = alive & ~(1 << c)
            for w in lf:
                rest &= ~(1 << w)
            if rest.bit_count() < 3:
                continue
            sub, old = t.induced(v for v in range(t.n) if rest >> v & 1)
            if not u1_applicable(sub, old.index(inner[0])):
                continue
            found = rec(rest)
            if found is not None:
                return found[0], found[1] + [(inner[0], c, lf)]
        dead.add(alive)
        return None

    found = rec((1 << t.n) - 1)
    if found is None:
        return None
    (center, star_leaves), stars = found
    vmap = [center] + star_leaves
    rid = {v: i for i, v in enumerate(vmap)}
    steps = []
    for v, c, lf in stars:
        steps.append({"attach": rid[v], "star_order": 1 + len(lf)})
        for w in [c] + lf:
            rid[w] = len(vmap)
            vmap.append(w)
    return FamilyCertificate("U_family", {"kind": "star", "order": len(star_leaves) + 1}, steps, vmap)


# --------------------------------------------------------------------------- replay


def replay(cert: FamilyCertificate) -> Graph:
    fam = cert.family
    base = cert.base or {}
    if fam == "R":
        return build_R(cert.steps)
    if fam == "T_family":
        return _replay_T(cert).tree
    if fam == "Corona":
        try:
            h = parse_edge_list(base["edge_list"])
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"corona base needs an edge list: {exc}", 0) from None
        if not is_tree(h):
            raise CertificateError("corona base is not a tree", 0)
        return corona(h)
    if fam == "U_family":
        order = base.get("order")
        if not isinstance(order, int) or order < 3:
            raise CertificateError("U_family base must be a star of order >= 3", 0)
        g = star_graph(order - 1)
        for i, step in enumerate(cert.steps, start=1):
            try:
                g = apply_U1(g, int(step["attach"]), int(step["star_order"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise CertificateError(str(exc), i) from None
        return g
    raise CertificateError(f"unknown family {fam!r}")


def certify(family: str, t: Graph) -> FamilyCertificate | None:
    fam = family_name(family)
    if fam == "R":
        return certify_R(t)
    if fam == "T_family":
        found = certify_T(t)
        return found[1] if found else None
    if fam == "U_family":
        return certify_U(t)
    return certify_corona(t)


def is_member(family: str, t: Graph) -> bool:
    """Oracle-side membership test for each family."""
    fam = family_name(family)
    if fam == "R":
        return is_in_R(t)
    if fam == "T_family":
        return in_T_by_ratio(t)
    if fam == "U_family":
        return recognize_U(t)
    return is_corona(t)


# --------------------------------------------------------------------------- closures


@lru_cache(maxsize=None)
def _t_members(n_max: int) -> tuple[LabeledTree, ...]:
    found: dict[bytes, LabeledTree] = {}
    frontier = [labeled_p6()] if n_max >= 6 else []
    while frontier:
        nxt = []
        for lt in frontier:
            key = canonical_form(lt.tree, lt.status)
            if key in found:
                continue
            found[key] = lt
            if lt.tree.n + 6 <= n_max:
                nxt.extend(apply_O(lt, v) for v in range(lt.tree.n) if lt.sta(v) == "B")
        frontier = nxt
    return tuple(found[k] for k in sorted(found))


def t_family_members(n_max: int) -> list[LabeledTree]:
    """Distinct labeled members of ``T_family`` with at most ``n_max`` vertices."""
    _budget("T_family", n_max)
    return list(_t_members(n_max))


@lru_cache(maxsize=None)
def _closure(fam: str, n_max: int) -> frozenset[bytes]:
    if fam == "T_family":
        return frozenset(canonical_form(lt.tree) for lt in _t_members(n_max))
    if fam == "Corona":
        return frozenset(canonical_form(corona(h)) for h in trees_up_to(n_max // 2))
    if fam == "R":
        found: set[bytes] = set()
        level = {canonical_form(Graph(2, [(0, 1)]))} if n_max >= 2 else set()
        while level:
            found |= level
            nxt = set()
            for form in level:
                t = tree_from_canonical(form)
                if t.n + 2 > n_max:
                    continue
                for v in range(t.n):
                    g = Graph(t.n + 2, list(t.edges) + [(v, t.n), (t.n, t.n + 1)])
                    nxt.add(canonical_form(g))
            level = nxt - found
        return frozenset(found)
    # U_family: stars first, then every applicable attachment of every star size.
    found = set()
    by_order: dict[int, set[bytes]] = {}
    for k in range(2, n_max):
        by_order.setdefault(k + 1, set()).add(canonical_form(star_graph(k)))
    for n in range(3, n_max + 1):
        for form in sorted(by_order.get(n, ())):
            found.add(form)
            t = tree_from_canonical(form)
            for v in range(t.n):
                if not u1_applicable(t, v):
                    continue
                for s in range(2, n_max - n + 1):
                    g = apply_U1(t, v, s, check=False)
                    by_order.setdefault(g.n, set()).add(canonical_form(g))
    return frozenset(found)


def _budget(fam: str, n_max: int) -> None:
    if n_max > FAMILY_BUDGET[fam]:
        raise InstanceTooLargeError(
            f"budget exceeded: {fam} closure limited to n <= {FAMILY_BUDGET[fam]}"
        )


def enumerate_family(family: str, n_max: int) -> frozenset[bytes]:
    """Canonical forms of every family member with at most ``n_max`` vertices."""
    fam = family_name(family)
    _budget(fam, n_max)
    return _closure(fam, n_max)

