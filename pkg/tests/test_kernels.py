import numpy as np
import pytest
from hypothesis import given, settings

from superdom.enumeration import all_trees
from superdom.graph import tree_from_canonical, canonical_form
from superdom.kernels import _numba, _numpy, backend_name, get_backend, set_backend
from superdom.solvers import gamma, gamma_sp, gamma_t

from conftest import trees


@pytest.fixture
def restore_backend():
    old = backend_name()
    yield
    set_backend(old)


def _params(t):
    t = tree_from_canonical(canonical_form(t))  # fresh graph, empty cache
    return gamma(t), gamma_t(t), gamma_sp(t)


def test_backends_agree_on_all_trees(restore_backend):
    trees_ = [t for n in range(2, 11) for t in all_trees(n)]
    set_backend("numba")
    a = [_params(t) for t in trees_]
    set_backend("numpy")
    b = [_params(t) for t in trees_]
    assert a == b


@settings(max_examples=60, deadline=None)
@given(trees(2, 22))
def test_kernel_functions_agree(t):
    nbr = t.nbr_array()
    for k in range(0, t.n // 2 + 1):
        assert _numba.first_sp_complement(nbr, t.n, k) == _numpy.first_sp_complement(nbr, t.n, k)
    cover = np.array([b | 1 << v for v, b in enumerate(t.nbr_bits)], dtype=np.int64)
    for k in range(1, 4):
        assert _numba.first_cover(cover, t.n, k) == _numpy.first_cover(cover, t.n, k)


@settings(max_examples=40, deadline=None)
@given(trees(2, 12))
def test_all_complements_agree(t):
    nbr = t.nbr_array()
    k = t.n - gamma_sp(t)
    a = sorted(_numba.all_sp_complements(nbr, t.n, k).tolist())
    b = sorted(_numpy.all_sp_complements(nbr, t.n, k).tolist())
    assert a == b and a


def test_numpy_chunking_path():
    # 24 vertices forces the chunked mask generator in the numpy backend
    from superdom.graph import path_graph

    p = path_graph(24)
    nbr = p.nbr_array()
    assert _numpy.first_sp_complement(nbr, 24, 12) == _numba.first_sp_complement(nbr, 24, 12)


def test_set_backend_rejects_unknown(restore_backend):
    with pytest.raises(ValueError):
        set_backend("fortran")
    assert get_backend().NAME in ("numba", "numpy")
