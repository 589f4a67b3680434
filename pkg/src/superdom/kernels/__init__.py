"""Backend selection for the hot search kernels.

``SUPERDOM_BACKEND=numpy`` forces the pure-numpy path; otherwise numba is
used when it imports. :func:`set_backend` switches at runtime (the benchmark
uses it to compare both).
"""

import importlib
import os

_BACKENDS = ("numba", "numpy")
_active = None


def _load(name):
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; choose from {_BACKENDS}")
    return importlib.import_module(f"{__name__}._{name}")


def set_backend(name):
    global _active
    _active = _load(name)
    return _active


def get_backend():
    global _active
    if _active is None:
        wanted = os.environ.get("SUPERDOM_BACKEND", "numba").strip().lower()
        try:
            _active = _load(wanted)
        except ImportError:
            _active = _load("numpy")
    return _active


def backend_name():
    return get_backend().NAME
