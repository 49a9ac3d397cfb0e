"""Kernel backend selection.

The compiled extension (``_fast``, Cython) is preferred when it imported
cleanly; the pure numpy/python twin (``_pure``) is the fallback. Both expose
the same functions with identical semantics. Set RANDGEO_PURE=1 to force the
fallback; ``randgeo.bench`` times one against the other.
"""

import os

from . import _pure

if os.environ.get("RANDGEO_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME


def get_backend(name=None):
    """Return the kernel module for `name` ('pure', 'cython', or None=selected)."""
    if name is None or name == BACKEND:
        return _impl
    if name == "pure":
        return _pure
    if name == "cython":
        from . import _fast  # raises ImportError when not built

        return _fast
    raise ValueError(f"unknown backend {name!r}")


dt2_triangulate = _impl.dt2_triangulate
dt3_triangulate = _impl.dt3_triangulate
ball_gather = _impl.ball_gather
cone_search_point = _impl.cone_search_point
reach_many = _impl.reach_many
yao_edges = _impl.yao_edges
fortress_stars = _impl.fortress_stars
kd_box_query = _impl.kd_box_query
cell_chain_hulls = _impl.cell_chain_hulls
count_close_pairs_kernel = _impl.count_close_pairs_kernel
