import pytest
from hypothesis import given, settings

from superdom.errors import InstanceTooLargeError, PreconditionError, UndefinedParameterError
from superdom.graph import Graph, VertexSet, corona, cycle_graph, path_graph, star_graph
from superdom.oracle import oracle_parameters
from superdom.solvers import (
    all_gamma_sp_sets,
    analyze_sp_set,
    external_private_neighbors,
    gamma,
    gamma_sp,
    gamma_sp_witness,
    gamma_t,
    gamma_t_witness,
    gamma_witness,
    injected_fault,
    is_dominating,
    is_super_dominating,
    is_total_dominating,
)

from conftest import trees


def test_path6_values():
    p6 = path_graph(6)
    assert (gamma(p6), gamma_t(p6), gamma_sp(p6)) == (2, 4, 3)


def test_small_values():
    assert gamma_sp(path_graph(2)) == 1
    assert gamma_sp(star_graph(3)) == 3
    assert gamma_sp(path_graph(3)) == 2
    c = corona(path_graph(3))
    assert gamma(c) == gamma_sp(c) == 3


def test_witnesses_are_valid():
    g = corona(star_graph(3))
    assert is_dominating(g, gamma_witness(g))
    assert is_total_dominating(g, gamma_t_witness(g))
    assert is_super_dominating(g, gamma_sp_witness(g))


def test_p3_has_three_optimal_sets():
    sets = all_gamma_sp_sets(path_graph(3))
    assert [list(s) for s in sets] == [[0, 1], [0, 2], [1, 2]]


def test_super_dominating_definition():
    p4 = path_graph(4)
    assert is_super_dominating(p4, [1, 2])
    assert not is_super_dominating(p4, [1, 3])  # 0 and 2 both lean only on 1
    assert is_super_dominating(p4, [0, 1, 2, 3])
    assert external_private_neighbors(p4, [1, 2], 0) == VertexSet.of(4, [1])


def test_analysis_sets():
    p5 = path_graph(5)
    info = analyze_sp_set(p5, [1, 2, 3])
    assert set(info.sbar) == {0, 4}
    assert set(info.p_set) == {1, 3}
    assert set(info.q_set) == {0, 4}
    assert set(info.u_set) == {1, 3}
    with pytest.raises(PreconditionError):
        analyze_sp_set(p5, [0, 4])


def test_undefined_and_too_large():
    with pytest.raises(UndefinedParameterError):
        gamma(Graph(0))
    with pytest.raises(UndefinedParameterError, match="isolated"):
        gamma_sp(Graph(3, [(0, 1)]))
    with pytest.raises(UndefinedParameterError):
        gamma_t(Graph(1))
    with pytest.raises(InstanceTooLargeError):
        gamma(path_graph(41))


def test_non_trees_are_fine():
    c5 = cycle_graph(5)
    assert oracle_parameters(c5) == {"gamma": gamma(c5), "gamma_t": gamma_t(c5), "gamma_sp": gamma_sp(c5)}


@settings(max_examples=150, deadline=None)
@given(trees(2, 11))
def test_solvers_match_oracle(t):
    assert {"gamma": gamma(t), "gamma_t": gamma_t(t), "gamma_sp": gamma_sp(t)} == oracle_parameters(t)


@settings(max_examples=100, deadline=None)
@given(trees(2, 10))
def test_every_listed_optimal_set_is_valid(t):
    k = gamma_sp(t)
    sets = all_gamma_sp_sets(t)
    assert sets == sorted(sets) and len(set(sets)) == len(sets)
    assert gamma_sp_witness(t) in sets
    for s in sets:
        assert len(s) == k and is_super_dominating(t, s)


@settings(max_examples=100, deadline=None)
@given(trees(2, 12))
def test_parameter_chain(t):
    # super dominating sets dominate, and half the vertices is always needed
    assert gamma(t) <= gamma_sp(t)
    assert (t.n + 1) // 2 <= gamma_sp(t) <= t.n - 1
    if t.n >= 2:
        assert gamma(t) <= gamma_t(t)


def test_injected_fault_changes_answers():
    p2 = path_graph(2)
    assert is_super_dominating(p2, [1])
    with injected_fault():
        # the scan stops before vertex 1, the only vertex that can vouch for 0
        assert not is_super_dominating(p2, [1])
    assert is_super_dominating(p2, [1])
