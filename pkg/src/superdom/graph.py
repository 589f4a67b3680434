"""Simple undirected graphs on vertices 0..n-1, bit-set vertex sets and tree utilities.

Everything here is immutable: constructions such as :func:`subdivide` or
:func:`corona` return fresh graphs, so values can be shared freely between
worker processes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EdgeListParseError, GraphError, NotATreeError

__all__ = [
    "VertexSet",
    "Graph",
    "LabeledTree",
    "path_graph",
    "star_graph",
    "cycle_graph",
    "is_connected",
    "is_tree",
    "leaves",
    "supports",
    "strong_supports",
    "leaf_neighbors",
    "diameter",
    "longest_path",
    "subdivide",
    "corona",
    "add_pendant",
    "centroids",
    "canonical_form",
    "tree_from_canonical",
    "parse_edge_list",
    "emit_edge_list",
]


class VertexSet:
    """Fixed-width bit-set over the vertex ids ``0..n-1``.

    Backed by a Python integer, so the width is unbounded; :meth:`words`
    exposes the 64-bit word-packed layout.
    """

    __slots__ = ("bits", "n")

    def __init__(self, bits: int = 0, n: int = 0):
        if bits < 0 or bits >> n:
            raise ValueError(f"bits {bits:#x} do not fit in a set over {n} vertices")
        self.bits = bits
        self.n = n

    @classmethod
    def of(cls, n: int, vertices: Iterable[int] = ()) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(bits, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def _check(self, other: "VertexSet") -> None:
        if self.n != other.n:
            raise ValueError(f"vertex sets over different ranges ({self.n} vs {other.n})")

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.bits == other.bits and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __lt__(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits < other.bits

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.bits | other.bits, self.n)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.bits & ~other.bits, self.n)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.bits ^ other.bits, self.n)

    def complement(self) -> "VertexSet":
        return VertexSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def add(self, v: int) -> "VertexSet":
        return VertexSet.of(self.n, [v]) | self

    def discard(self, v: int) -> "VertexSet":
        return VertexSet(self.bits & ~(1 << v), self.n)

    def min(self) -> int:
        if not self.bits:
            raise ValueError("min() of an empty vertex set")
        return (self.bits & -self.bits).bit_length() - 1

    def words(self) -> np.ndarray:
        nwords = max(1, -(-self.n // 64))
        out = np.zeros(nwords, dtype=np.uint64)
        b = self.bits
        for i in range(nwords):
            out[i] = b & 0xFFFFFFFFFFFFFFFF
            b >>= 64
        return out

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)}, n={self.n})"


class Graph:
    """Immutable simple graph on ``0..n-1``.

    Edges are stored normalised (``u < v``) and sorted; adjacency is kept both
    as sorted neighbour tuples and as neighbour bit masks.
    """

    __slots__ = ("n", "edges", "adj", "nbr_bits", "_memo")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise GraphError(f"duplicate edge {key}")
            norm.add(key)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        adj: list[list[int]] = [[] for _ in range(n)]
        bits = [0] * n
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.nbr_bits: tuple[int, ...] = tuple(bits)
        self._memo: dict = {}

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def nbr_set(self, v: int) -> VertexSet:
        return VertexSet(self.nbr_bits[v], self.n)

    def closed_nbr_set(self, v: int) -> VertexSet:
        return VertexSet(self.nbr_bits[v] | 1 << v, self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and bool(self.nbr_bits[u] >> v & 1)

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def nbr_array(self) -> np.ndarray:
        """Neighbour masks as an ``int64`` array, the input format of the kernels."""
        arr = self._memo.get("nbr_array")
        if arr is None:
            if self.n > 62:
                raise GraphError("bit-mask kernels support at most 62 vertices")
            arr = np.array(self.nbr_bits, dtype=np.int64)
            arr.setflags(write=False)
            self._memo["nbr_array"] = arr
        return arr

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertex ids")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, compacted. Returns it with the new-to-old id map."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(old), edges), old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __getstate__(self):
        return (self.n, self.edges)

    def __setstate__(self, state):
        n, edges = state
        self.__init__(n, edges)


STATUSES = ("A", "B", "C")


@dataclass(frozen=True)
class LabeledTree:
    """A tree together with a status in {A, B, C} for every vertex."""

    tree: Graph
    status: tuple[str, ...]

    def __post_init__(self):
        if not is_tree(self.tree):
            raise NotATreeError("labeled tree requires a tree")
        if len(self.status) != self.tree.n:
            raise GraphError("exactly one status per vertex required")
        bad = [s for s in self.status if s not in STATUSES]
        if bad:
            raise GraphError(f"unknown status {bad[0]!r}")

    def sta(self, v: int) -> str:
        return self.status[v]

    def class_of(self, label: str) -> VertexSet:
        return VertexSet.of(self.tree.n, (v for v, s in enumerate(self.status) if s == label))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _bfs(g: Graph, source: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                parent[w] = v
                q.append(w)
    return dist, parent


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    dist, _ = _bfs(g, 0)
    return min(dist) >= 0


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def _require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise NotATreeError("operation requires a tree")


def leaves(g: Graph) -> VertexSet:
    return VertexSet.of(g.n, (v for v in range(g.n) if len(g.adj[v]) == 1))


def leaf_neighbors(g: Graph, v: int) -> list[int]:
    return [w for w in g.adj[v] if len(g.adj[w]) == 1]


def supports(g: Graph) -> VertexSet:
    return VertexSet.of(g.n, (v for v in range(g.n) if leaf_neighbors(g, v)))


def strong_supports(g: Graph) -> VertexSet:
    return VertexSet.of(g.n, (v for v in range(g.n) if len(leaf_neighbors(g, v)) >= 2))


def _farthest(dist: list[int]) -> int:
    best = max(dist)
    return dist.index(best)


def diameter(g: Graph) -> int:
    if g.n == 0 or not is_connected(g):
        raise GraphError("graph not connected")
    if is_tree(g):
        return len(longest_path(g)) - 1
    return max(max(_bfs(g, s)[0]) for s in range(g.n))


def longest_path(g: Graph) -> list[int]:
    """One diametral path.

    Double BFS on trees; all-pairs BFS otherwise. Ties go to the lowest id.
    """
    if g.n == 0 or not is_connected(g):
        raise GraphError("graph not connected")
    if is_tree(g):
        a = _farthest(_bfs(g, 0)[0])
        dist, parent = _bfs(g, a)
        b = _farthest(dist)
    else:
        best = (-1, 0, 0)
        for s in range(g.n):
            d = _bfs(g, s)[0]
            t = _farthest(d)
            if d[t] > best[0]:
                best = (d[t], s, t)
        _, a, b = best
        _, parent = _bfs(g, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def subdivide(g: Graph, es: Sequence[Sequence[int]]) -> Graph:
    """Splice a fresh vertex into every edge of ``es``.

    New vertices get ids ``n, n+1, ...`` in the order of ``es``.
    """
    keys = []
    for e in es:
        u, v = int(e[0]), int(e[1])
        key = (u, v) if u < v else (v, u)
        if not g.has_edge(u, v) or key in keys:
            raise GraphError("invalid subdivision set")
        keys.append(key)
    removed = set(keys)
    edges = [e for e in g.edges if e not in removed]
    for i, (u, v) in enumerate(keys):
        w = g.n + i
        edges.append((u, w))
        edges.append((w, v))
    return Graph(g.n + len(keys), edges)


def corona(h: Graph) -> Graph:
    """Attach one pendant leaf to every vertex; leaf of ``v`` gets id ``n + v``."""
    if h.n == 0:
        raise GraphError("corona of the empty graph")
    return Graph(2 * h.n, list(h.edges) + [(v, h.n + v) for v in range(h.n)])


def add_pendant(g: Graph, v: int) -> Graph:
    return Graph(g.n + 1, list(g.edges) + [(v, g.n)])


def centroids(g: Graph) -> list[int]:
    _require_tree(g)
    n = g.n
    order, parent = [], [-1] * n
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    out = []
    for v in range(n):
        heaviest = n - size[v]
        for w in g.adj[v]:
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if 2 * heaviest <= n:
            out.append(v)
    return out


def _rooted_code(adj, root: int, labels) -> bytes:
    n = len(adj)
    parent = [-1] * n
    order = []
    stack = [root]
    parent[root] = root
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if parent[w] < 0:
                parent[w] = v
                stack.append(w)
    code: list[bytes] = [b""] * n
    for v in reversed(order):
        kids = sorted(code[w] for w in adj[v] if parent[w] == v and w != root)
        tag = labels[v] if labels is not None else b""
        code[v] = b"(" + tag + b"".join(kids) + b")"
    return code[root]


def canonical_form(g: Graph, labels: Sequence[str] | None = None) -> bytes:
    """Isomorphism-invariant byte string for trees (AHU at the centroid).

    With two centroids the smaller of the two rooted encodings is used. When
    ``labels`` is given, vertex statuses become part of the encoding.
    """
    _require_tree(g)
    tags = None
    if labels is not None:
        tags = [str(s).encode() for s in labels]
    return min(_rooted_code(g.adj, c, tags) for c in centroids(g))


def tree_from_canonical(form: bytes) -> Graph:
    """Rebuild an (unlabeled) tree from its canonical form, ids in preorder."""
    edges = []
    stack: list[int] = []
    n = 0
    for ch in form:
        if ch == ord("("):
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        elif ch == ord(")"):
            if not stack:
                raise GraphError("unbalanced canonical form")
            stack.pop()
        else:
            raise GraphError("labeled forms cannot be decoded")
    if stack:
        raise GraphError("unbalanced canonical form")
    return Graph(n, edges)


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise EdgeListParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two fields, got {len(parts)}", lineno)
        a, b = _ints(parts, lineno)
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError("vertex and edge counts must be non-negative", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListParseError(f"vertex id out of range 0..{n - 1} in edge {a} {b}", lineno)
        if a == b:
            raise EdgeListParseError(f"self-loop at vertex {a}", lineno)
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise EdgeListParseError("missing 'n m' header line")
    if len(edges) != header[1]:
        raise EdgeListParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
