"""All non-isomorphic free trees of a given order.

Level ``n`` is built from level ``n - 1`` by hanging a leaf on every vertex
and keeping one tree per canonical form. Representatives are decoded from
their canonical form, so vertex ids are reproducible; trees are emitted in
ascending canonical-form order.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Iterator

from .errors import InstanceTooLargeError
from .graph import Graph, add_pendant, canonical_form, emit_edge_list, tree_from_canonical

MAX_TREE_N = 16


@lru_cache(maxsize=None)
def _forms(n: int) -> tuple[bytes, ...]:
    if n == 1:
        return (b"()",)
    found = set()
    for form in _forms(n - 1):
        t = tree_from_canonical(form)
        for v in range(t.n):
            found.add(canonical_form(add_pendant(t, v)))
    return tuple(sorted(found))


def tree_forms(n: int) -> tuple[bytes, ...]:
    if not 1 <= n <= MAX_TREE_N:
        raise InstanceTooLargeError(f"tree order {n} outside 1..{MAX_TREE_N}")
    return _forms(n)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Graph, ...]:
    return tuple(tree_from_canonical(f) for f in tree_forms(n))


def all_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of trees on ``n`` vertices."""
    return iter(_trees(n))


def trees_up_to(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(max(1, n_min), n_max + 1):
        yield from all_trees(n)


def count_trees(n: int) -> int:
    return len(tree_forms(n))


def dump_trees(n: int, directory) -> list[Path]:
    """Write each tree of order ``n`` to ``<hex canonical form>.txt`` in ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for form, t in zip(tree_forms(n), _trees(n)):
        p = out / f"{form.hex()}.txt"
        p.write_text(emit_edge_list(t))
        paths.append(p)
    return paths
