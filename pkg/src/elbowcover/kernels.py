"""Backend selection for the search kernels.

The compiled extension is used when it imports and ``ELBOWCOVER_PURE_PYTHON``
is not set; otherwise the pure-Python kernels are used.  Coverage-mask
kernels fall back to Python per call when an instance has more than 64
adjacent pairs.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

ELBOW = _pykernels.ELBOW
IN_ELBOW = _pykernels.IN_ELBOW

if _ckernels is not None and not os.environ.get("ELBOWCOVER_PURE_PYTHON"):
    _active: ModuleType = _ckernels
    BACKEND = "cython"
else:
    _active = _pykernels
    BACKEND = "python"


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def orientation_masks(pair_e, pair_f, flip_e, flip_f, kind, start, count):
    impl = _active if len(pair_e) <= 64 else _pykernels
    return impl.orientation_masks(pair_e, pair_f, flip_e, flip_f, kind, start, count)


def min_cover(masks, full, kmax):
    impl = _active if full < (1 << 64) else _pykernels
    return impl.min_cover(masks, full, kmax)


def family_cost(orders, mixing):
    if len(orders) > 31:
        return _pykernels.family_cost(orders, mixing)
    return _active.family_cost(orders, mixing)


def local_search(orders, mixing, seed, max_iters, noise=64):
    if len(orders) > 31:
        return _pykernels.local_search(orders, mixing, seed, max_iters, noise)
    return _active.local_search(orders, mixing, seed, max_iters, noise)
