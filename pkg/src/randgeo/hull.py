"""Convex hulls: brute-force oracle and the bottom-up quadtree algorithm.

Both construct the strict hull (no collinear/coplanar boundary points), so
vertex sets are comparable exactly. The quadtree route computes per-leaf
hulls, then repeatedly merges children's hull vertices level by level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import ParameterError
from .predicates import orient3d
from .quadtree import default_height


@dataclass(frozen=True)
class Hull:
    """d=2: vertex indices in CCW order; d=3: vertex set plus oriented facets."""

    dim: int
    vertices: np.ndarray
    facets: np.ndarray | None = None
    degenerate: bool = False

    def vertex_set(self):
        return set(self.vertices.tolist())

    def save_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for v in self.vertices:
                f.write("%d\n" % v)
            if self.facets is not None:
                for (i, j, k) in self.facets:
                    f.write("f,%d,%d,%d\n" % (i, j, k))


def _canon_cycle(cycle):
    """Rotate a CCW vertex cycle to start at its smallest index."""
    cycle = list(cycle)
    k = cycle.index(min(cycle))
    return np.asarray(cycle[k:] + cycle[:k], dtype=np.int64)


def _hull2_indices(pts, idx):
    """Strict 2d hull of the given indices, CCW starting at the lex-min point."""
    idx = np.asarray(idx, dtype=np.int64)
    order = idx[np.lexsort((pts[idx, 1], pts[idx, 0]))]
    chain = _kernels.cell_chain_hulls(
        pts, order, np.asarray([0, len(order)], dtype=np.int64)
    )[0]
    return chain


def hull2(pts, idx=None):
    pts = np.asarray(pts, dtype=np.float64)
    if idx is None:
        idx = np.arange(len(pts))
    if len(idx) == 0:
        raise ParameterError("hull of an empty set")
    chain = _hull2_indices(pts, idx)
    if len(chain) < 3:
        return Hull(dim=2, vertices=np.sort(chain), degenerate=True)
    return Hull(dim=2, vertices=_canon_cycle(chain.tolist()))


def _orient_rows(pts, faces, q):
    """Float orient3d of each face against q, plus the error-filter bound."""
    a = pts[faces[:, 0]]
    b = pts[faces[:, 1]] - a
    c = pts[faces[:, 2]] - a
    d = q - a
    t1 = b[:, 0] * (c[:, 1] * d[:, 2] - c[:, 2] * d[:, 1])
    t2 = b[:, 1] * (c[:, 0] * d[:, 2] - c[:, 2] * d[:, 0])
    t3 = b[:, 2] * (c[:, 0] * d[:, 1] - c[:, 1] * d[:, 0])
    det = t1 - t2 + t3
    perm = (
        np.abs(b[:, 0]) * (np.abs(c[:, 1] * d[:, 2]) + np.abs(c[:, 2] * d[:, 1]))
        + np.abs(b[:, 1]) * (np.abs(c[:, 0] * d[:, 2]) + np.abs(c[:, 2] * d[:, 0]))
        + np.abs(b[:, 2]) * (np.abs(c[:, 0] * d[:, 1]) + np.abs(c[:, 1] * d[:, 0]))
    )
    return det, 7.105427357601002e-15 * perm


def _hull3_incremental(pts, idx):
    """Strict 3d hull of the given indices; returns (vertices, facets) or a
    degenerate marker when the set is coplanar."""
    idx = np.asarray(idx, dtype=np.int64)
    m = len(idx)
    if m < 4:
        return None
    a = idx[0]
    b = next((i for i in idx[1:] if not np.array_equal(pts[i], pts[a])), None)
    if b is None:
        return None
    c = None
    for i in idx[1:]:
        if i == b:
            continue
        if np.linalg.norm(np.cross(pts[b] - pts[a], pts[i] - pts[a])) != 0.0:
            c = i
            break
    if c is None:
        return None
    d = None
    for i in idx[1:]:
        if i in (b, c):
            continue
        if orient3d(*pts[a], *pts[b], *pts[c], *pts[i]) != 0:
            d = i
            break
    if d is None:
        return None
    if orient3d(*pts[a], *pts[b], *pts[c], *pts[d]) < 0:
        b, c = c, b
    # outward faces of the seed tet (d-last convention as in the kernels)
    faces = np.asarray(
        [(b, c, d), (a, d, c), (a, b, d), (a, c, b)], dtype=np.int64
    )
    used = {int(a), int(b), int(c), int(d)}
    for p in idx:
        p = int(p)
        if p in used:
            continue
        q = pts[p]
        det, bound = _orient_rows(pts, faces, q)
        visible = det > bound
        uncertain = np.abs(det) <= bound
        if uncertain.any():
            for k in np.nonzero(uncertain)[0]:
                f = faces[k]
                visible[k] = (
                    orient3d(*pts[f[0]], *pts[f[1]], *pts[f[2]], *q) > 0
                )
        if not visible.any():
            continue
        vis_faces = faces[visible]
        edge_set = set()
        for (u, v, w) in vis_faces:
            for e in ((u, v), (v, w), (w, u)):
                e = (int(e[0]), int(e[1]))
                edge_set.add(e)
        horizon = [e for e in edge_set if (e[1], e[0]) not in edge_set]
        new_faces = np.asarray([(u, v, p) for (u, v) in horizon], dtype=np.int64)
        faces = np.concatenate([faces[~visible], new_faces])
    verts = np.unique(faces)
    canon = []
    for (u, v, w) in faces.tolist():
        k = int(np.argmin((u, v, w)))
        canon.append(((u, v, w) + (u, v, w))[k : k + 3])
    canon.sort()
    return verts, np.asarray(canon, dtype=np.int64)


def hull3(pts, idx=None):
    pts = np.asarray(pts, dtype=np.float64)
    if idx is None:
        idx = np.arange(len(pts))
    if len(idx) == 0:
        raise ParameterError("hull of an empty set")
    res = _hull3_incremental(pts, idx)
    if res is None:
        # affinely degenerate: report the lower-dimensional hull as such
        sub = pts[idx]
        spread = sub.max(axis=0) - sub.min(axis=0)
        keep = np.argsort(spread)[-2:]
        flat = hull2(pts[:, sorted(keep)], idx)
        return Hull(dim=3, vertices=np.sort(flat.vertices), degenerate=True)
    verts, facets = res
    return Hull(dim=3, vertices=verts, facets=facets)


def hull_bruteforce(P):
    """Direct hull: monotone chain (d=2), incremental insertion (d=3)."""
    if P.dim == 2:
        return hull2(P.points)
    if P.dim == 3:
        return hull3(P.points)
    raise ParameterError(f"hulls support d in {{2,3}}, got d={P.dim}")


def hull_quadtree(P, h=None):
    """Bottom-up quadtree hull: per-leaf hulls, then per-node merges.

    Produces the same strict vertex set as hull_bruteforce.
    """
    if P.dim not in (2, 3):
        raise ParameterError(f"hulls support d in {{2,3}}, got d={P.dim}")
    n = len(P)
    pts = P.points
    if h is None:
        h = default_height(n, P.dim)
    if n <= 2 or h == 0:
        return hull_bruteforce(P)
    side = 1 << h
    icoords = np.floor(pts * side).astype(np.int64)
    survivors = np.arange(n, dtype=np.int64)
    for level in range(h, -1, -1):
        shift = h - level
        cell = icoords[survivors] >> shift
        flat = cell[:, 0]
        for k in range(1, P.dim):
            flat = (flat << (level + 1)) | cell[:, k]
        if P.dim == 2:
            order = np.lexsort((pts[survivors, 1], pts[survivors, 0], flat))
            ordered = survivors[order]
            starts = np.concatenate(
                ([0], np.nonzero(np.diff(flat[order]))[0] + 1, [len(ordered)])
            ).astype(np.int64)
            out, _ = _kernels.cell_chain_hulls(pts, ordered, starts)
            survivors = np.unique(out)
        else:
            order = np.argsort(flat, kind="stable")
            ordered = survivors[order]
            starts = np.concatenate(
                ([0], np.nonzero(np.diff(flat[order]))[0] + 1, [len(ordered)])
            )
            keep = []
            for g in range(len(starts) - 1):
                grp = ordered[starts[g] : starts[g + 1]]
                if len(grp) <= 4:
                    keep.extend(grp.tolist())
                    continue
                res = _hull3_incremental(pts, grp)
                if res is None:
                    keep.extend(grp.tolist())  # coplanar group: defer upward
                else:
                    keep.extend(res[0].tolist())
            survivors = np.unique(np.asarray(keep, dtype=np.int64))
        if level == 0:
            break
    if P.dim == 2:
        return hull2(pts, survivors)
    return hull3(pts, survivors)
