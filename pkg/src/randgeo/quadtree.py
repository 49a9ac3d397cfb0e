"""Fixed-height quadtree over [0,1)^d and the constant-time level-of-segment primitive.

The tree is implicit: only leaf buckets are stored (keyed by leaf cell id);
a node at (level, cell) owns the union of the leaves under it. Nothing near
the root is ever materialized.
"""

from __future__ import annotations

import math

import numpy as np

from .core import ParameterError

# coordinates are held as 52-bit fixed point integers, exact for doubles in [0,1)
FIXED_BITS = 52


class Quadtree:
    def __init__(self, points, h):
        if h < 0:
            raise ParameterError(f"need h >= 0, got {h}")
        pts = np.asarray(points, dtype=np.float64)
        n, d = pts.shape
        if h * d > 62:
            raise ParameterError(f"2^(h*d) overflows addressing: h={h}, d={d}")
        self.h = int(h)
        self.dim = d
        self.points = pts
        side = 1 << h
        ids = np.floor(pts * side).astype(np.int64)
        flat = ids[:, 0]
        for k in range(1, d):
            flat = flat * side + ids[:, k]
        self.leaf_of_point = flat
        order = np.argsort(flat, kind="stable")
        self.order = order.astype(np.int64)
        uniq, starts = np.unique(flat[order], return_index=True)
        self._leaf_keys = uniq
        self._leaf_starts = np.concatenate([starts, [n]])

    @property
    def leaf_count(self):
        """Number of leaf cells in the 2^(h*d) partition."""
        return (1 << self.h) ** self.dim

    def leaf_cell(self, p):
        side = 1 << self.h
        return tuple(int(x) for x in np.floor(np.asarray(p) * side))

    def leaf_bucket(self, cell):
        side = 1 << self.h
        flat = 0
        for c in cell:
            flat = flat * side + int(c)
        k = np.searchsorted(self._leaf_keys, flat)
        if k == len(self._leaf_keys) or self._leaf_keys[k] != flat:
            return np.empty(0, dtype=np.int64)
        return np.sort(self.order[self._leaf_starts[k] : self._leaf_starts[k + 1]])

    def occupied_leaves(self):
        """Pairs (flat leaf id, point indices), ascending by id."""
        for k, key in enumerate(self._leaf_keys):
            yield int(key), self.order[self._leaf_starts[k] : self._leaf_starts[k + 1]]


def default_height(n, d):
    """h = ceil(log2(n) / d), the height that gives about n leaves."""
    return max(0, math.ceil(math.log2(max(n, 2)) / d))


def build_quadtree(P, h):
    return Quadtree(P.points, h)


def fixed_point(coords):
    """Exact 52-bit fixed-point encoding of coordinates in [0,1)."""
    return (np.asarray(coords, dtype=np.float64) * float(1 << FIXED_BITS)).astype(
        np.int64
    )


def _bit_length_u64(x):
    """Elementwise bit_length for int64 arrays with values < 2^53.

    frexp on the exact float conversion returns the exponent, which equals
    bit_length for positive integers below 2^53 (no rounding occurs).
    """
    x = np.asarray(x)
    _, e = np.frexp(x.astype(np.float64))
    return np.where(x > 0, e, 0).astype(np.int64)


def segment_levels(p_arr, q_arr, h):
    """Vectorized segment_level over arrays of endpoints (n, d)."""
    xp = fixed_point(p_arr)
    xq = fixed_point(q_arr)
    diff_bits = _bit_length_u64(xp ^ xq)  # highest differing bit position, 1-based
    shared = FIXED_BITS - diff_bits.max(axis=-1)  # common leading bits = max level
    return np.clip(shared, 0, h)


def segment_level(p, q, h):
    """Deepest level l <= h with floor(p*2^l) == floor(q*2^l) componentwise.

    Computed in O(d) word operations: XOR the fixed-point encodings and count
    shared leading bits; two coordinates share their first l quadtree bits
    iff their top l fixed-point bits agree.
    """
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    if np.array_equal(p, q):
        raise ParameterError("segment_level requires p != q")
    return int(segment_levels(p, q, h))
