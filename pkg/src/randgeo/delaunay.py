"""Delaunay triangulation: small-set construction, the two-phase local-star
algorithm (fortress via reach/influence, moat via vicinities and orthogonal
range search), and an empty-circumball verifier.

The two-phase build computes, for every point, a small set of points it can
interact with, triangulates that set, and keeps the star of the point; the
union of the stars is the Delaunay triangulation with high probability.
"""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np

from . import _kernels
from .cones import default_cones
from .core import DegenerateInputError, ParameterError, derive_params
from .grid import ball_scan, build_grid
from .predicates import incircle, orient2d
from .rangesearch import KDTree

log = logging.getLogger(__name__)

_INCIRCLE_EPS = 7.105427357601002e-15


class SimplicialComplex:
    """Set of simplices closed under faces, stored by its maximal simplices.

    `tops` is a (T, k) array of sorted vertex rows (usually k = dim+1).
    Lower-dimensional faces are generated on demand; equality compares the
    maximal-simplex sets.
    """

    def __init__(self, dim, n_vertices, tops):
        tops = np.asarray(tops, dtype=np.int64)
        if tops.size == 0:
            tops = tops.reshape(0, dim + 1)
        tops = np.unique(np.sort(tops, axis=1), axis=0)
        self.dim = dim
        self.n_vertices = n_vertices
        self.tops = tops
        self.fallback_events = 0
        self._star_index = None

    @property
    def top_simplices(self):
        return self.tops

    def top_simplex_set(self):
        return set(map(tuple, self.tops.tolist()))

    def simplex_set(self):
        """Every simplex of every dimension (the face closure)."""
        out = set()
        for row in self.tops.tolist():
            for k in range(1, len(row) + 1):
                out.update(itertools.combinations(row, k))
        return out

    def has_simplex(self, simplex):
        s = set(int(v) for v in simplex)
        self._ensure_star_index()
        rows = self._star_index.get(min(s), [])
        return any(s <= set(self.tops[r].tolist()) for r in rows)

    def _ensure_star_index(self):
        if self._star_index is None:
            idx = {}
            for r, row in enumerate(self.tops.tolist()):
                for v in row:
                    idx.setdefault(v, []).append(r)
            self._star_index = idx

    def star_tops(self, v):
        """Rows of maximal simplices containing v."""
        self._ensure_star_index()
        rows = self._star_index.get(int(v), [])
        return self.tops[rows]

    def edge_count(self):
        if len(self.tops) == 0:
            return 0
        pairs = set()
        for row in self.tops.tolist():
            pairs.update(itertools.combinations(row, 2))
        return len(pairs)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.dim == other.dim
            and self.tops.shape == other.tops.shape
            and bool(np.array_equal(self.tops, other.tops))
        )

    def __len__(self):
        return len(self.tops)

    def save_csv(self, path):
        """Rows `k,v0,...,vk` for maximal simplices."""
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for row in self.tops.tolist():
                f.write("%d," % (len(row) - 1) + ",".join(map(str, row)) + "\n")


def star(c, p_index):
    """All simplices of the complex containing p, of every dimension."""
    p = int(p_index)
    rows = c.star_tops(p)
    if len(rows) == 0:
        if not 0 <= p < c.n_vertices:
            raise ParameterError(f"vertex {p} not in complex")
        return [(p,)]
    out = set()
    for row in rows.tolist():
        rest = [v for v in row if v != p]
        for k in range(len(rest) + 1):
            for comb in itertools.combinations(rest, k):
                out.add(tuple(sorted((p,) + comb)))
    return sorted(out, key=lambda s: (len(s), s))


def _tie_candidates_2d(pts, tris):
    """Interior edges whose two adjacent triangles are cocircular within the
    float filter; returns (edge array rows [a,b,c,d], candidate mask)."""
    t = np.sort(tris, axis=1)
    edges = np.concatenate([t[:, [0, 1]], t[:, [0, 2]], t[:, [1, 2]]])
    opp = np.concatenate([t[:, 2], t[:, 1], t[:, 0]])
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    edges, opp = edges[order], opp[order]
    same = np.all(edges[:-1] == edges[1:], axis=1)
    idx = np.nonzero(same)[0]
    if len(idx) == 0:
        return np.empty((0, 4), dtype=np.int64)
    quads = np.stack(
        [edges[idx, 0], edges[idx, 1], opp[idx], opp[idx + 1]], axis=1
    )
    a, b, c, d = (pts[quads[:, k]] for k in range(4))
    adx, ady = a[:, 0] - d[:, 0], a[:, 1] - d[:, 1]
    bdx, bdy = b[:, 0] - d[:, 0], b[:, 1] - d[:, 1]
    cdx, cdy = c[:, 0] - d[:, 0], c[:, 1] - d[:, 1]
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    det = (
        ad2 * (bdx * cdy - bdy * cdx)
        + bd2 * (cdx * ady - cdy * adx)
        + cd2 * (adx * bdy - ady * bdx)
    )
    perm = (
        ad2 * (np.abs(bdx * cdy) + np.abs(bdy * cdx))
        + bd2 * (np.abs(cdx * ady) + np.abs(cdy * adx))
        + cd2 * (np.abs(adx * bdy) + np.abs(ady * bdx))
    )
    return quads[np.abs(det) <= _INCIRCLE_EPS * perm]


def canonicalize_cocircular(pts, tris, labels=None):
    """Resolve exactly-cocircular quads toward the lexicographically smallest
    diagonal (by `labels`, default the local indices). No-op generically."""
    if len(tris) == 0:
        return tris
    if labels is None:
        labels = np.arange(len(pts))
    tris = np.asarray(tris)
    for _ in range(8):
        quads = _tie_candidates_2d(pts, tris)
        flipped = False
        for (a, b, c, d) in quads.tolist():
            A, B, C, D = pts[a], pts[b], pts[c], pts[d]
            if orient2d(*A, *B, *C) < 0:
                A2, B2 = B, A
                a2, b2 = b, a
            else:
                A2, B2, a2, b2 = A, B, a, b
            if incircle(*A2, *B2, *C, *D) != 0:
                continue
            cur = tuple(sorted((int(labels[a]), int(labels[b]))))
            alt = tuple(sorted((int(labels[c]), int(labels[d]))))
            if alt < cur:
                keyed = {tuple(sorted(r)) for r in tris.tolist()}
                keyed.discard(tuple(sorted((a, b, c))))
                keyed.discard(tuple(sorted((a, b, d))))
                keyed.add(tuple(sorted((a, c, d))))
                keyed.add(tuple(sorted((b, c, d))))
                tris = np.asarray(sorted(keyed), dtype=tris.dtype)
                flipped = True
                break
        if not flipped:
            break
    return tris


def dt_small(points, labels=None):
    """Delaunay triangulation of a small point set by incremental insertion.

    Accepts a PointSet or an (m, d) array, d in {2, 3}; requires at least
    d+1 affinely independent points. Exactly cocircular quads (d=2) resolve
    toward the lexicographically smallest diagonal.
    """
    pts = points.points if hasattr(points, "points") else np.asarray(points, dtype=np.float64)
    m, d = pts.shape
    if d == 2:
        tris = _kernels.dt2_triangulate(pts)
        tris = canonicalize_cocircular(pts, tris, labels)
        return SimplicialComplex(2, m, tris)
    if d == 3:
        tets = _kernels.dt3_triangulate(pts)
        return SimplicialComplex(3, m, tets)
    raise ParameterError(f"Delaunay construction supports d in {{2,3}}, got {d}")


def in_fortress(p, delta):
    p = np.asarray(p)
    return bool(np.all((p >= delta) & (p <= 1.0 - delta)))


def _local_star_rows(pts, local, p_index, d):
    """Triangulate pts[local]; return global index rows of p's top simplices."""
    triangulate = _kernels.dt2_triangulate if d == 2 else _kernels.dt3_triangulate
    simp = triangulate(pts[local])
    pos = int(np.searchsorted(local, p_index))
    mask = np.any(simp == pos, axis=1)
    if not mask.any():
        return np.empty((0, d + 1), dtype=np.int64)
    return np.sort(local[simp[mask]], axis=1)


def fortress_star(g, P, p_index, params, cones=None):
    """Star of a fortress point: reach by doubling cone search, then the
    Delaunay triangulation of the 2*reach ball around p.

    Falls back to the 2*delta ball (and logs) when a cone is empty within
    delta; raises when p is outside the fortress.
    """
    if cones is None:
        cones = default_cones(P.dim)
    delta = params.delta
    p = P.points[p_index]
    if not in_fortress(p, delta):
        raise ParameterError(f"point {p_index} is not in the fortress")
    bi, bd = _kernels.cone_search_point(
        P.points, g.order, g.cell_start, g.N, int(p_index),
        cones.directions, cones.cos_half, delta,
    )
    if np.all(bi >= 0):
        radius = 2.0 * float(bd.max())
    else:
        radius = 2.0 * delta
        log.warning("fortress fallback: point %d has an empty cone within delta", p_index)
    local = ball_scan(g, P, p, radius)
    rows = _local_star_rows(P.points, local, int(p_index), P.dim)
    c = SimplicialComplex(P.dim, len(P), rows) if len(rows) else None
    return star(c, p_index) if c is not None else [(int(p_index),)]


def vicinity_boxes(p, params):
    """Canonical boxes anchored at p whose union covers vic(p).

    Per orthant, one box for every factorization of 2^-tau into d power-of-two
    sides, where 2^d*phi <= 2^-tau <= 2^(d+1)*phi (tau clamped to >= 0).
    """
    p = np.asarray(p, dtype=np.float64)
    d = params.dim
    phi = params.phi
    tau = max(0, math.floor(-math.log2((2**d) * phi)))
    sides = []
    for expo in itertools.product(range(tau + 1), repeat=d - 1):
        last = tau - sum(expo)
        if 0 <= last <= tau:
            sides.append(tuple(2.0 ** -e for e in expo + (last,)))
    boxes = []
    for signs in itertools.product((-1.0, 1.0), repeat=d):
        for alpha in sides:
            lo, hi = np.empty(d), np.empty(d)
            for k in range(d):
                if signs[k] > 0:
                    lo[k], hi[k] = p[k], p[k] + alpha[k]
                else:
                    lo[k], hi[k] = p[k] - alpha[k], p[k]
            boxes.append((lo, hi))
    return boxes


class MoatRangeStructure:
    """k-d tree over the moat points only, reporting closed-box ranges."""

    def __init__(self, P, params):
        delta = params.delta
        pts = P.points
        inner = np.all((pts >= delta) & (pts <= 1.0 - delta), axis=1)
        self.moat_indices = np.nonzero(~inner)[0]
        self.tree = KDTree(pts[self.moat_indices])

    def range_query(self, lo, hi):
        """Global indices of moat points inside the closed box."""
        return self.moat_indices[self.tree.box_query(lo, hi)]


def moat_star(p_index, mrs, g, P, params):
    """Star of a moat point from its vicinity neighbors (canonical-box range
    queries over the moat) plus all points within 2*delta."""
    p = P.points[p_index]
    if in_fortress(p, params.delta):
        raise ParameterError(f"point {p_index} is not in the moat")
    cand = [mrs.range_query(lo, hi) for (lo, hi) in vicinity_boxes(p, params)]
    cand = np.unique(np.concatenate(cand)) if cand else np.empty(0, dtype=np.int64)
    if len(cand):
        vol = np.prod(np.abs(P.points[cand] - p), axis=1)
        n_moat = cand[vol <= params.phi]
    else:
        n_moat = cand
    n_fortress = ball_scan(g, P, p, 2.0 * params.delta)
    local = np.unique(np.concatenate([n_moat, n_fortress, [p_index]]))
    if len(local) < P.dim + 1:
        return [(int(p_index),)]
    rows = _local_star_rows(P.points, local, int(p_index), P.dim)
    if not len(rows):
        return [(int(p_index),)]
    return star(SimplicialComplex(P.dim, len(P), rows), p_index)


def dt_build(P, params=None, c_d=None, cones=None):
    """Delaunay triangulation as the union of per-point local stars.

    Fortress points use the reach/influence route; moat points use vicinity
    range queries plus the 2*delta ball. Equals dt_small(P) up to cocircular
    ties with high probability; fallback events are counted on the result's
    `fallback_events` attribute, never fatal.
    """
    n, d = len(P), P.dim
    if d not in (2, 3):
        raise ParameterError(f"Delaunay construction supports d in {{2,3}}, got {d}")
    if n < 16:
        return dt_small(P.points)
    if params is None:
        params = derive_params(n, d, c_d)
    if cones is None:
        cones = default_cones(d)
    delta = params.delta
    pts = P.points
    N = max(1, math.ceil(n ** (1.0 / d)))
    g = build_grid(P, N)
    inner = np.all((pts >= delta) & (pts <= 1.0 - delta), axis=1)
    fortress_idx = np.nonzero(inner)[0]
    moat_idx = np.nonzero(~inner)[0]

    all_rows = []
    fallbacks = 0
    if len(fortress_idx):
        rows, fb = _kernels.fortress_stars(
            pts, g.order, g.cell_start, g.N,
            cones.directions, cones.cos_half, delta, fortress_idx,
        )
        fallbacks += fb
        if len(rows):
            all_rows.append(rows)
    if len(moat_idx):
        mrs = MoatRangeStructure(P, params)
        for p_index in moat_idx:
            p = pts[p_index]
            cand = [mrs.range_query(lo, hi) for (lo, hi) in vicinity_boxes(p, params)]
            cand = np.unique(np.concatenate(cand))
            vol = np.prod(np.abs(pts[cand] - p), axis=1)
            n_moat = cand[vol <= params.phi]
            n_fortress = ball_scan(g, P, p, 2.0 * delta)
            local = np.unique(np.concatenate([n_moat, n_fortress, [p_index]]))
            if len(local) < d + 1:
                fallbacks += 1
                continue
            rows = _local_star_rows(pts, local, int(p_index), d)
            if len(rows):
                all_rows.append(rows)
            else:
                fallbacks += 1
    if not all_rows:
        return dt_small(P.points)
    c = SimplicialComplex(d, n, np.concatenate(all_rows))
    c.fallback_events = fallbacks
    return c


def circumballs(pts, tops):
    """Circumcenters and radii of d-simplices, vectorized.

    Returns (centers, radii, degenerate_mask); degenerate rows (near-zero
    orientation determinant) get radius 0 and are flagged, not failed.
    """
    tops = np.asarray(tops)
    d = pts.shape[1]
    v0 = pts[tops[:, 0]]
    A = np.stack([pts[tops[:, k]] - v0 for k in range(1, d + 1)], axis=1)
    rhs = 0.5 * np.sum(A * A, axis=2)
    det = np.linalg.det(A)
    scale = np.abs(A).sum(axis=(1, 2)) ** d + 1e-300
    degen = np.abs(det) <= 1e-14 * scale
    centers = np.zeros_like(v0)
    ok = ~degen
    if ok.any():
        centers[ok] = np.linalg.solve(A[ok], rhs[ok])
    centers = centers + v0
    radii = np.linalg.norm(centers - v0, axis=1)
    radii[degen] = 0.0
    return centers, radii, degen


def verify_delaunay(c, P, mode="exhaustive", sample=2000, seed=0, rel_tol=1e-10):
    """Check the defining empty-circumball property of each top simplex.

    Reports violations (a point strictly inside a circumball, beyond the
    relative tolerance) and the maximum penetration depth. Vacuously passes
    on an empty complex.
    """
    report = {
        "mode": mode,
        "checked": 0,
        "violations": 0,
        "max_penetration": 0.0,
        "degenerate": 0,
    }
    tops = c.tops
    if len(tops) == 0 or tops.shape[1] != P.dim + 1:
        return report
    pts = P.points
    centers, radii, degen = circumballs(pts, tops)
    report["degenerate"] = int(degen.sum())
    rows = np.nonzero(~degen)[0]
    if mode == "sampled" and len(rows) > sample:
        rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
        rows = rng.choice(rows, size=sample, replace=False)
    N = max(1, math.ceil(len(P) ** (1.0 / P.dim)))
    g = build_grid(P, N)
    for r in rows:
        cutoff = radii[r] * (1.0 - rel_tol)
        inside = ball_scan(g, P, centers[r], cutoff)
        bad = np.setdiff1d(inside, tops[r], assume_unique=False)
        report["checked"] += 1
        if len(bad):
            report["violations"] += int(len(bad))
            depth = 1.0 - np.linalg.norm(pts[bad] - centers[r], axis=1) / radii[r]
            report["max_penetration"] = max(report["max_penetration"], float(depth.max()))
    return report
