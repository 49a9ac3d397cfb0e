"""Uniform-grid spatial hash with ball scans and per-row prefix sums.

The grid is stored in CSR form (points sorted by flattened cell id plus a
cell-offset table), which gives O(1) bucket retrieval and lets the compiled
kernels walk cells without any hashing.
"""

from __future__ import annotations

import collections

import numpy as np

from .core import ParameterError


class UniformGrid:
    """N^d cells over [0,1)^d; cell of p is (floor(p_0*N), ..., floor(p_{d-1}*N))."""

    def __init__(self, points, N):
        if N < 1:
            raise ParameterError(f"need N >= 1, got {N}")
        pts = np.asarray(points, dtype=np.float64)
        n, d = pts.shape
        self.N = int(N)
        self.dim = d
        self.point_count = n
        self.points = pts
        ids = np.floor(pts * N).astype(np.int64)
        flat = ids[:, 0]
        for k in range(1, d):
            flat = flat * N + ids[:, k]
        order = np.argsort(flat, kind="stable")
        self.cell_of_point = flat
        self.order = order.astype(np.int64)
        # cell_start[c] .. cell_start[c+1] slices `order` for flat cell c
        counts = np.bincount(flat, minlength=N**d)
        self.cell_start = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)

    def flat_id(self, cell):
        flat = 0
        for c in cell:
            flat = flat * self.N + int(c)
        return flat

    def bucket(self, cell):
        """Point indices in the given integer-tuple cell, ascending."""
        for c in cell:
            if not 0 <= c < self.N:
                return np.empty(0, dtype=np.int64)
        f = self.flat_id(cell)
        idx = self.order[self.cell_start[f] : self.cell_start[f + 1]]
        return np.sort(idx)

    def buckets(self):
        """Mapping cell tuple -> sorted point indices (nonempty cells only)."""
        out = collections.defaultdict(list)
        for i, f in enumerate(self.cell_of_point):
            out[self._unflatten(f)].append(i)
        return {k: np.asarray(sorted(v), dtype=np.int64) for k, v in out.items()}

    def _unflatten(self, f):
        cell = []
        for _ in range(self.dim):
            cell.append(int(f % self.N))
            f //= self.N
        return tuple(reversed(cell))


def cell_id(p, N):
    """Componentwise floor(p_i * N); requires coordinates in [0, 1)."""
    p = np.asarray(p, dtype=np.float64)
    if p.min() < 0.0 or p.max() >= 1.0:
        raise ParameterError("coordinates must lie in [0, 1)")
    return tuple(int(x) for x in np.floor(p * N))


def build_grid(P, N):
    return UniformGrid(P.points, N)


def _box_dist_sq(cell, center, N):
    """Squared distance from `center` to the closed box of `cell`."""
    s = 0.0
    for k, c in enumerate(cell):
        lo, hi = c / N, (c + 1) / N
        x = center[k]
        if x < lo:
            s += (lo - x) ** 2
        elif x > hi:
            s += (x - hi) ** 2
    return s


def ball_cells(g, center, radius):
    """Cells whose closed box intersects ball(center, radius), by BFS flood.

    The flood starts at the center cell and expands to axis neighbors that
    still intersect the ball; the set of intersecting cells is orthogonally
    convex, so this visits exactly the cells that intersect the ball.
    """
    N, d = g.N, g.dim
    start = tuple(min(N - 1, max(0, int(c * N))) for c in center)
    r2 = radius * radius
    seen = {start}
    out = []
    queue = collections.deque([start])
    while queue:
        cell = queue.popleft()
        if _box_dist_sq(cell, center, N) > r2:
            continue
        out.append(cell)
        for k in range(d):
            for dv in (-1, 1):
                c = cell[k] + dv
                if 0 <= c < N:
                    nxt = cell[:k] + (c,) + cell[k + 1 :]
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return out


def ball_scan(g, P, center, radius):
    """Indices of points q with euclid_dist(center, q) <= radius, sorted.

    Visits only grid cells intersecting the ball (closed membership).
    """
    if radius < 0:
        raise ParameterError("radius must be >= 0")
    center = np.asarray(center, dtype=np.float64)
    pts = P.points if hasattr(P, "points") else np.asarray(P)
    hits = []
    r2 = radius * radius
    for cell in ball_cells(g, center, radius):
        f = g.flat_id(cell)
        idx = g.order[g.cell_start[f] : g.cell_start[f + 1]]
        if idx.size:
            d2 = np.sum((pts[idx] - center) ** 2, axis=1)
            hits.append(idx[d2 <= r2])
    if not hits:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(hits))


class RowPrefixSums:
    """Per-row cumulative point counts over grid cells (d=2 only)."""

    def __init__(self, g):
        if g.dim != 2:
            raise ParameterError("row prefix sums are defined for d=2 grids")
        N = g.N
        counts = np.diff(g.cell_start).reshape(N, N)
        self.N = N
        self.cum = np.concatenate(
            [np.zeros((N, 1), dtype=np.int64), np.cumsum(counts, axis=1)], axis=1
        )


def build_row_prefix_sums(g):
    return RowPrefixSums(g)


def row_range_count(ps, row, j0, j1):
    """Number of points with cell in `row`, columns j0..j1 inclusive. O(1)."""
    if not (0 <= row < ps.N and 0 <= j0 <= j1 < ps.N):
        raise ParameterError(f"bad range row={row} j0={j0} j1={j1} for N={ps.N}")
    return int(ps.cum[row, j1 + 1] - ps.cum[row, j0])
