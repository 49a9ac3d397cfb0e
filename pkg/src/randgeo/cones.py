"""Cone covers of R^d, nearest-in-cone queries, reach, influence, Yao graph.

A cone cover is a set of unit directions such that every direction of R^d is
within `half_angle` of one of them. d=2 uses the exact circular partition;
d>=3 uses a greedy farthest-point cover of a dense sphere mesh, certified at
build time by random sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import ConstructionError, ParameterError, default_c_d, derive_params
from .grid import ball_scan, build_grid

_COVER_CACHE = {}


@dataclass(frozen=True)
class ConeSet:
    directions: np.ndarray  # (k, d) unit vectors
    half_angle: float
    dim: int

    @property
    def cos_half(self):
        return math.cos(self.half_angle)

    def __len__(self):
        return self.directions.shape[0]


@dataclass(frozen=True)
class YaoGraph:
    """Truncated Yao graph: per-cone nearest-neighbor edges shorter than cutoff."""

    ei: np.ndarray
    ej: np.ndarray
    weights: np.ndarray
    cutoff: float

    def __len__(self):
        return len(self.ei)

    def edge_set(self):
        return set(zip(self.ei.tolist(), self.ej.tolist()))

    def save_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for i, j, w in zip(self.ei, self.ej, self.weights):
                f.write("%d,%d,%.17g\n" % (i, j, w))


def _icosphere_centroids(subdivisions=5):
    """Normalized face centroids of a subdivided icosahedron (20*4^s faces)."""
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = np.array(
        [
            (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
            (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
            (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
        ],
        dtype=np.float64,
    )
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    faces = np.array(
        [
            (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
            (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
            (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
            (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
        ],
        dtype=np.int64,
    )
    tris = verts[faces]  # (F, 3, 3)
    for _ in range(subdivisions):
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        ab, bc, ca = (a + b) / 2, (b + c) / 2, (c + a) / 2
        tris = np.concatenate(
            [
                np.stack([a, ab, ca], axis=1),
                np.stack([ab, b, bc], axis=1),
                np.stack([ca, bc, c], axis=1),
                np.stack([ab, bc, ca], axis=1),
            ]
        )
    cen = tris.mean(axis=1)
    return cen / np.linalg.norm(cen, axis=1, keepdims=True)


def _random_sphere_mesh(d, m, seed=20480):
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    v = rng.standard_normal((m, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _greedy_cover(mesh, cover_angle):
    """Farthest-point greedy: pick directions until mesh is covered."""
    cos_needed = math.cos(cover_angle)
    m = len(mesh)
    best = np.full(m, -2.0)
    chosen = [0]
    best = np.maximum(best, mesh @ mesh[0])
    while best.min() < cos_needed:
        nxt = int(np.argmin(best))
        chosen.append(nxt)
        best = np.maximum(best, mesh @ mesh[nxt])
        if len(chosen) > 4096:
            raise ConstructionError("greedy sphere cover did not converge")
    return mesh[chosen]


def _certify_cover(dirs, half_angle, d, samples=100_000):
    probes = _random_sphere_mesh(d, samples, seed=7_654_321)
    best = (probes @ dirs.T).max(axis=1)
    worst = math.acos(min(1.0, max(-1.0, float(best.min()))))
    return worst <= half_angle * (1.0 + 1e-9)


def build_cone_cover(d, half_angle=math.pi / 12):
    """Unit directions whose half_angle cones cover R^d.

    d=2 returns exactly ceil(pi/half_angle) evenly rotated directions.
    d in {3,4,5} covers greedily over a sphere mesh (an icosphere with 20480
    faces for d=3) and certifies coverage over 10^5 sampled directions.
    Dimensions 4 and 5 exist for the Boruvka degree experiment only.
    """
    if not 2 <= d <= 5:
        raise ParameterError(f"cone covers support 2 <= d <= 5, got {d}")
    if not 0 < half_angle <= math.pi / 4:
        raise ParameterError("need 0 < half_angle <= pi/4")
    key = (d, round(half_angle, 15))
    if key in _COVER_CACHE:
        return _COVER_CACHE[key]
    if d == 2:
        m = math.ceil(math.pi / half_angle)
        ang = 2.0 * math.pi * np.arange(m) / m
        dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    else:
        if d == 3:
            mesh = _icosphere_centroids(5)
            slack = 0.025  # mesh covering radius, icosphere-5 centroids ~1.2 deg
        else:
            mesh = _random_sphere_mesh(d, 1 << 14)
            slack = 0.25 * half_angle
        dirs = _greedy_cover(mesh, max(half_angle - slack, half_angle / 2))
    if not _certify_cover(dirs, half_angle, d):
        raise ConstructionError(
            f"cone cover for d={d}, half_angle={half_angle:.4f} failed certification"
        )
    cs = ConeSet(directions=np.ascontiguousarray(dirs), half_angle=half_angle, dim=d)
    _COVER_CACHE[key] = cs
    return cs


def default_cones(d):
    return build_cone_cover(d, math.pi / 12 if d <= 3 else math.pi / 4)


def in_cone(apex, direction, half_angle, q):
    """True iff the angle between q-apex and direction is at most half_angle.

    Closed comparison: boundary points belong to the cone.
    """
    apex = np.asarray(apex, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    v = q - apex
    norm = math.sqrt(float(v @ v))
    if norm == 0.0:
        raise ParameterError("q must differ from the apex")
    return float(np.dot(direction, v)) >= math.cos(half_angle) * norm


def nearest_in_cone(g, P, p_index, cone, cutoff):
    """Closest point of P-p inside the cone at distance < cutoff, or None.

    `cone` is (direction, half_angle). Searches the grid with expanding
    radii 2^i / N around the apex cell.
    """
    if cutoff <= 0:
        raise ParameterError("cutoff must be positive")
    direction, half_angle = cone
    dirs = np.asarray(direction, dtype=np.float64).reshape(1, -1)
    bi, _ = _kernels.cone_search_point(
        P.points, g.order, g.cell_start, g.N, int(p_index),
        dirs, math.cos(half_angle), float(cutoff),
    )
    return int(bi[0]) if bi[0] >= 0 else None


def reach(g, P, p_index, cones, cutoff):
    """Max over cones of the nearest-in-cone distance; None if a cone is
    empty within the cutoff."""
    bi, bd = _kernels.cone_search_point(
        P.points, g.order, g.cell_start, g.N, int(p_index),
        cones.directions, cones.cos_half, float(cutoff),
    )
    if np.any(bi < 0):
        return None
    return float(bd.max())


def ward(g, P, p_index, reach_value):
    """Influence of p: indices of all points within 2*reach_value (p included)."""
    if not np.isfinite(reach_value):
        raise ParameterError("reach_value must be finite")
    return ball_scan(g, P, P.points[p_index], 2.0 * reach_value)


def yao_graph_truncated(P, params=None, cones=None, c_d=None, cutoff=None):
    """Per-cone nearest-neighbor graph with edges of weight < delta.

    Edge list is deduplicated (i < j) and sorted lexicographically.
    """
    n = len(P)
    if cones is None:
        cones = default_cones(P.dim)
    if cutoff is None:
        if params is None:
            params = derive_params(n, P.dim, c_d)
        cutoff = params.delta
    N = max(1, math.ceil(n ** (1.0 / P.dim)))
    g = build_grid(P, N)
    ei, ej, w = _kernels.yao_edges(
        P.points, g.order, g.cell_start, g.N,
        cones.directions, cones.cos_half, float(cutoff),
    )
    return YaoGraph(ei=ei, ej=ej, weights=w, cutoff=float(cutoff))
