"""Orthogonal range reporting over a static point set (k-d tree, closed boxes)."""

from __future__ import annotations

import numpy as np

from . import _kernels

_LEAF = 16


class KDTree:
    """Median-split k-d tree in flat arrays; leaves hold up to 16 points."""

    def __init__(self, points):
        pts = np.ascontiguousarray(points, dtype=np.float64)
        n, d = pts.shape
        self.points = pts
        self.perm = np.arange(n, dtype=np.int64)
        split_dim, split_val = [], []
        left, right, start, end = [], [], [], []

        def build(lo, hi, depth):
            node = len(split_dim)
            split_dim.append(-1)
            split_val.append(0.0)
            left.append(-1)
            right.append(-1)
            start.append(lo)
            end.append(hi)
            if hi - lo <= _LEAF:
                return node
            seg = self.perm[lo:hi]
            spread = pts[seg].max(axis=0) - pts[seg].min(axis=0)
            dim = int(np.argmax(spread))
            mid = (hi - lo) // 2
            part = np.argpartition(pts[seg, dim], mid)
            self.perm[lo:hi] = seg[part]
            val = float(pts[self.perm[lo + mid], dim])
            split_dim[node] = dim
            split_val[node] = val
            left[node] = build(lo, lo + mid, depth + 1)
            right[node] = build(lo + mid, hi, depth + 1)
            return node

        if n:
            build(0, n, 0)
        else:  # single empty leaf so queries have a root
            split_dim, split_val = [-1], [0.0]
            left, right, start, end = [-1], [-1], [0], [0]
        self.split_dim = np.asarray(split_dim, dtype=np.int64)
        self.split_val = np.asarray(split_val, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.start = np.asarray(start, dtype=np.int64)
        self.end = np.asarray(end, dtype=np.int64)

    def box_query(self, lo, hi):
        """Indices of points inside the closed box [lo, hi], ascending."""
        lo = np.asarray(lo, dtype=np.float64)
        hi = np.asarray(hi, dtype=np.float64)
        return _kernels.kd_box_query(
            self.split_dim, self.split_val, self.left, self.right,
            self.start, self.end, self.perm, self.points, lo, hi,
        )
