import pytest
from hypothesis import given, settings

from superdom.errors import NotATreeError, PreconditionError
from superdom.graph import Graph, leaves, path_graph, star_graph
from superdom.solvers import all_gamma_sp_sets, is_super_dominating
from superdom.transform import exists_normalized, normalize_for_leaf, rooted_view

from conftest import trees


def test_rooted_view():
    v = rooted_view(path_graph(4), 0)
    assert v.parent == (-1, 0, 1, 2)
    assert v.children == ((1,), (2,), (3,), ())


def test_path5_leaf_moved_out():
    out = normalize_for_leaf(path_graph(5), [0, 3, 4], 0)
    assert 0 not in out and len(out) == 3
    assert is_super_dominating(path_graph(5), out)


def test_leaf_already_outside_is_identity():
    s = [1, 2, 4]
    out = normalize_for_leaf(path_graph(5), s, 0)
    assert list(out) == s


def test_preconditions():
    p5 = path_graph(5)
    with pytest.raises(PreconditionError, match="not a leaf"):
        normalize_for_leaf(p5, [1, 2, 3], 2)
    with pytest.raises(PreconditionError, match="not super dominating"):
        normalize_for_leaf(p5, [0, 4], 0)
    with pytest.raises(PreconditionError, match="not a minimum"):
        normalize_for_leaf(p5, [0, 1, 2, 3], 0)
    with pytest.raises(NotATreeError):
        normalize_for_leaf(Graph(3, [(0, 1), (1, 2), (0, 2)]), [0, 1], 0)


def test_star_every_leaf():
    s = star_graph(4)
    for v in leaves(s):
        assert v not in exists_normalized(s, v)


@settings(max_examples=80, deadline=None)
@given(trees(2, 10))
def test_every_set_every_leaf(t):
    optimal = set(all_gamma_sp_sets(t))
    for s in optimal:
        for v in leaves(t):
            out = normalize_for_leaf(t, s, v)
            assert out in optimal and v not in out
