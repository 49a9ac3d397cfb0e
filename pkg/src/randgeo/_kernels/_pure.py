"""Pure-python kernel backend.

Reference implementations of the hot kernels: incremental Delaunay in 2d/3d
(Bowyer-Watson with ghost simplices and walk location), grid-based cone
searches, ball gathering, k-d box queries, per-cell hull chains, and the
close-pair counter. The compiled backend in ``_fast.pyx`` mirrors these
semantics exactly; tests compare the two.
"""

from __future__ import annotations

import numpy as np

from ..core import DegenerateInputError
from ..predicates import incircle, insphere, orient2d, orient3d

INF = -1
BACKEND_NAME = "pure"


# --------------------------------------------------------------------------
# 2d Delaunay: Bowyer-Watson with ghost triangles
# --------------------------------------------------------------------------


class _Tri2:
    __slots__ = ("verts", "neigh", "alive", "free", "last", "xs", "ys")

    def __init__(self, xs, ys):
        self.verts = []
        self.neigh = []
        self.alive = []
        self.free = []
        self.last = 0
        self.xs = xs
        self.ys = ys

    def new_tri(self, a, b, c):
        if self.free:
            t = self.free.pop()
            self.verts[t] = [a, b, c]
            self.neigh[t] = [-1, -1, -1]
            self.alive[t] = True
        else:
            t = len(self.verts)
            self.verts.append([a, b, c])
            self.neigh.append([-1, -1, -1])
            self.alive.append(True)
        return t

    def kill(self, t):
        self.alive[t] = False
        self.free.append(t)


def _conflict2(T, t, px, py):
    a, b, c = T.verts[t]
    xs, ys = T.xs, T.ys
    if c == INF:
        return orient2d(xs[a], ys[a], xs[b], ys[b], px, py) > 0
    return incircle(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], px, py) > 0


def _locate2(T, px, py):
    """Walk from T.last toward (px,py); return a conflicting triangle."""
    xs, ys = T.xs, T.ys
    t = T.last
    if not T.alive[t] or INF in T.verts[t]:
        t = next(i for i in range(len(T.verts)) if T.alive[i] and INF not in T.verts[i])
    steps = 0
    limit = 4 * len(T.verts) + 64
    while True:
        steps += 1
        if steps > limit:  # degenerate walk; exhaustive rescue
            for i in range(len(T.verts)):
                if T.alive[i] and _conflict2(T, i, px, py):
                    return i
            raise DegenerateInputError("point location failed (coincident points?)")
        a, b, c = T.verts[t]
        if c == INF:
            return t  # outside the hull next to this ghost edge
        if orient2d(xs[a], ys[a], xs[b], ys[b], px, py) < 0:
            t = T.neigh[t][2]
        elif orient2d(xs[b], ys[b], xs[c], ys[c], px, py) < 0:
            t = T.neigh[t][0]
        elif orient2d(xs[c], ys[c], xs[a], ys[a], px, py) < 0:
            t = T.neigh[t][1]
        else:
            return t


def _insert2(T, p):
    px, py = T.xs[p], T.ys[p]
    t0 = _locate2(T, px, py)
    if not _conflict2(T, t0, px, py):
        raise DegenerateInputError("insertion found no cavity (coincident points?)")
    # BFS the connected conflict region
    cavity = {t0}
    stack = [t0]
    boundary = []  # (u, v, outer_tri) directed edges of the cavity rim
    while stack:
        t = stack.pop()
        vs = T.verts[t]
        for k in range(3):
            nb = T.neigh[t][k]
            if nb in cavity:
                continue
            if nb >= 0 and _conflict2(T, nb, px, py):
                cavity.add(nb)
                stack.append(nb)
            else:
                boundary.append((vs[(k + 1) % 3], vs[(k + 2) % 3], nb))
    for t in cavity:
        T.kill(t)
    # fan p to every rim edge; ghosts keep INF in the last slot
    edge_owner = {}
    created = []
    for u, v, outer in boundary:
        if v == INF:  # rim edge (u, INF): new hull edge p -> u
            tri = T.new_tri(p, u, INF)
        elif u == INF:  # rim edge (INF, v): new hull edge v -> p
            tri = T.new_tri(v, p, INF)
        else:
            tri = T.new_tri(p, u, v)
        created.append((tri, outer))
        vs = T.verts[tri]
        for k in range(3):
            edge_owner[(vs[(k + 1) % 3], vs[(k + 2) % 3])] = (tri, k)
    for tri, outer in created:
        vs = T.verts[tri]
        for k in range(3):
            u, v = vs[(k + 1) % 3], vs[(k + 2) % 3]
            mate = edge_owner.get((v, u))
            if mate is not None:
                T.neigh[tri][k] = mate[0]
            else:
                T.neigh[tri][k] = outer
                if outer >= 0:
                    ovs = T.verts[outer]
                    for j in range(3):
                        if (ovs[(j + 1) % 3], ovs[(j + 2) % 3]) == (v, u):
                            T.neigh[outer][j] = tri
                            break
    T.last = created[0][0]
    for tri, _ in created:
        if INF not in T.verts[tri]:
            T.last = tri
            break


def dt2_triangulate(pts):
    """Delaunay triangles of an (m,2) array, rows as CCW vertex triples."""
    pts = np.asarray(pts, dtype=np.float64)
    m = pts.shape[0]
    if m < 3:
        raise DegenerateInputError(f"need at least 3 points, got {m}")
    xs = pts[:, 0].tolist()
    ys = pts[:, 1].tolist()
    # initial non-degenerate triangle, scanning in index order
    j = next((i for i in range(1, m) if (xs[i], ys[i]) != (xs[0], ys[0])), None)
    if j is None:
        raise DegenerateInputError("all points coincide")
    k = next(
        (
            i
            for i in range(1, m)
            if i != j and orient2d(xs[0], ys[0], xs[j], ys[j], xs[i], ys[i]) != 0
        ),
        None,
    )
    if k is None:
        raise DegenerateInputError("all points are collinear")
    a, b, c = 0, j, k
    if orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]) < 0:
        b, c = c, b
    T = _Tri2(xs, ys)
    t = T.new_tri(a, b, c)
    g0 = T.new_tri(b, a, INF)
    g1 = T.new_tri(c, b, INF)
    g2 = T.new_tri(a, c, INF)
    T.neigh[t] = [g1, g2, g0]
    T.neigh[g0] = [g2, g1, t]
    T.neigh[g1] = [g0, g2, t]
    T.neigh[g2] = [g1, g0, t]
    T.last = t
    for p in range(m):
        if p in (a, b, c):
            continue
        _insert2(T, p)
    out = [
        vs for i, vs in enumerate(T.verts) if T.alive[i] and INF not in vs
    ]
    return np.asarray(out, dtype=np.int32).reshape(len(out), 3)


# --------------------------------------------------------------------------
# 3d Delaunay: Bowyer-Watson with ghost tetrahedra
# --------------------------------------------------------------------------

# slot -> outward-oriented facet of a positively oriented tet [v0,v1,v2,v3]
_FACET = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


class _Tri3:
    __slots__ = ("verts", "neigh", "alive", "free", "last", "xs", "ys", "zs")

    def __init__(self, xs, ys, zs):
        self.verts = []
        self.neigh = []
        self.alive = []
        self.free = []
        self.last = 0
        self.xs = xs
        self.ys = ys
        self.zs = zs

    def new_tet(self, a, b, c, d):
        if self.free:
            t = self.free.pop()
            self.verts[t] = [a, b, c, d]
            self.neigh[t] = [-1, -1, -1, -1]
            self.alive[t] = True
        else:
            t = len(self.verts)
            self.verts.append([a, b, c, d])
            self.neigh.append([-1, -1, -1, -1])
            self.alive.append(True)
        return t

    def kill(self, t):
        self.alive[t] = False
        self.free.append(t)

    def coords(self, i):
        return self.xs[i], self.ys[i], self.zs[i]


def _conflict3(T, t, px, py, pz):
    vs = T.verts[t]
    if vs[3] == INF:
        a, b, c = vs[0], vs[1], vs[2]
        return (
            orient3d(*T.coords(a), *T.coords(b), *T.coords(c), px, py, pz) > 0
        )
    a, b, c, d = vs
    return (
        insphere(
            *T.coords(a), *T.coords(b), *T.coords(c), *T.coords(d), px, py, pz
        )
        > 0
    )


def _locate3(T, px, py, pz):
    t = T.last
    if not T.alive[t] or T.verts[t][3] == INF:
        t = next(
            i for i in range(len(T.verts)) if T.alive[i] and T.verts[i][3] != INF
        )
    steps = 0
    limit = 4 * len(T.verts) + 64
    while True:
        steps += 1
        if steps > limit:
            for i in range(len(T.verts)):
                if T.alive[i] and _conflict3(T, i, px, py, pz):
                    return i
            raise DegenerateInputError("point location failed (coincident points?)")
        vs = T.verts[t]
        if vs[3] == INF:
            return t
        moved = False
        for k in range(4):
            f = _FACET[k]
            a, b, c = vs[f[0]], vs[f[1]], vs[f[2]]
            if (
                orient3d(*T.coords(a), *T.coords(b), *T.coords(c), px, py, pz)
                > 0
            ):
                t = T.neigh[t][k]
                moved = True
                break
        if not moved:
            return t


def _insert3(T, p):
    px, py, pz = T.coords(p)
    t0 = _locate3(T, px, py, pz)
    if not _conflict3(T, t0, px, py, pz):
        raise DegenerateInputError("insertion found no cavity (coincident points?)")
    cavity = {t0}
    stack = [t0]
    boundary = []  # (facet ids tuple, outer tet)
    while stack:
        t = stack.pop()
        vs = T.verts[t]
        for k in range(4):
            nb = T.neigh[t][k]
            if nb in cavity:
                continue
            if nb >= 0 and _conflict3(T, nb, px, py, pz):
                cavity.add(nb)
                stack.append(nb)
            else:
                f = _FACET[k]
                boundary.append(((vs[f[0]], vs[f[1]], vs[f[2]]), nb))
    for t in cavity:
        T.kill(t)
    facet_owner = {}
    created = []
    for (f0, f1, f2), outer in boundary:
        # reverse the outward rim facet so the new tet (facing p) is positive
        g0, g1, g2 = f0, f2, f1
        if INF in (g0, g1, g2):
            # rotate INF into the facet slots so the new hull facet is (e0,e1,p)
            while g2 != INF:
                g0, g1, g2 = g1, g2, g0
            tet = T.new_tet(g0, g1, p, INF)
        else:
            o = orient3d(
                *T.coords(g0), *T.coords(g1), *T.coords(g2), px, py, pz
            )
            if o < 0:
                g1, g2 = g2, g1
            tet = T.new_tet(g0, g1, g2, p)
        created.append((tet, outer, frozenset((f0, f1, f2))))
        vs = T.verts[tet]
        for k in range(4):
            f = _FACET[k]
            key = frozenset((vs[f[0]], vs[f[1]], vs[f[2]]))
            facet_owner.setdefault(key, []).append((tet, k))
    # orient new ghosts outward: the real mate's free vertex must see them negatively
    for tet, outer, bkey in created:
        vs = T.verts[tet]
        if vs[3] != INF:
            continue
        key = frozenset((vs[0], vs[1], vs[2]))
        mates = facet_owner.get(key, [])
        for mt, _ in mates:
            if mt != tet and T.verts[mt][3] != INF:
                mvs = T.verts[mt]
                x = next(v for v in mvs if v not in key)
                if (
                    orient3d(
                        *T.coords(vs[0]),
                        *T.coords(vs[1]),
                        *T.coords(vs[2]),
                        *T.coords(x),
                    )
                    > 0
                ):
                    T.verts[tet][0], T.verts[tet][1] = (
                        T.verts[tet][1],
                        T.verts[tet][0],
                    )
                    # rebuild this tet's facet keys (orientation swap keeps sets)
                break
    for tet, outer, bkey in created:
        vs = T.verts[tet]
        for k in range(4):
            f = _FACET[k]
            key = frozenset((vs[f[0]], vs[f[1]], vs[f[2]]))
            if key == bkey:
                T.neigh[tet][k] = outer
                if outer >= 0:
                    ovs = T.verts[outer]
                    for j in range(4):
                        fo = _FACET[j]
                        okey = frozenset((ovs[fo[0]], ovs[fo[1]], ovs[fo[2]]))
                        if okey == key:
                            T.neigh[outer][j] = tet
                            break
            else:
                mates = facet_owner.get(key, [])
                for mt, mk in mates:
                    if mt != tet:
                        T.neigh[tet][k] = mt
                        break
    T.last = created[0][0]
    for tet, _, _ in created:
        if T.verts[tet][3] != INF:
            T.last = tet
            break


def dt3_triangulate(pts):
    """Delaunay tetrahedra of an (m,3) array, rows positively oriented."""
    pts = np.asarray(pts, dtype=np.float64)
    m = pts.shape[0]
    if m < 4:
        raise DegenerateInputError(f"need at least 4 points, got {m}")
    xs = pts[:, 0].tolist()
    ys = pts[:, 1].tolist()
    zs = pts[:, 2].tolist()
    a = 0
    b = next((i for i in range(1, m) if (xs[i], ys[i], zs[i]) != (xs[a], ys[a], zs[a])), None)
    if b is None:
        raise DegenerateInputError("all points coincide")
    c = None
    for i in range(1, m):
        if i == b:
            continue
        cx = (ys[b] - ys[a]) * (zs[i] - zs[a]) - (zs[b] - zs[a]) * (ys[i] - ys[a])
        cy = (zs[b] - zs[a]) * (xs[i] - xs[a]) - (xs[b] - xs[a]) * (zs[i] - zs[a])
        cz = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
        if cx != 0 or cy != 0 or cz != 0:
            c = i
            break
    if c is None:
        raise DegenerateInputError("all points are collinear")
    d = next(
        (
            i
            for i in range(1, m)
            if i not in (b, c)
            and orient3d(
                xs[a], ys[a], zs[a],
                xs[b], ys[b], zs[b],
                xs[c], ys[c], zs[c],
                xs[i], ys[i], zs[i],
            )
            != 0
        ),
        None,
    )
    if d is None:
        raise DegenerateInputError("all points are coplanar")
    if (
        orient3d(
            xs[a], ys[a], zs[a],
            xs[b], ys[b], zs[b],
            xs[c], ys[c], zs[c],
            xs[d], ys[d], zs[d],
        )
        < 0
    ):
        b, c = c, b
    T = _Tri3(xs, ys, zs)
    t = T.new_tet(a, b, c, d)
    ghosts = []
    for k in range(4):
        f = _FACET[k]
        vs = T.verts[t]
        g = T.new_tet(vs[f[0]], vs[f[1]], vs[f[2]], INF)
        ghosts.append(g)
        T.neigh[t][k] = g
        T.neigh[g][3] = t
    # ghost-to-ghost adjacency via shared (edge, INF) facets
    fmap = {}
    for g in ghosts:
        vs = T.verts[g]
        for k in range(3):
            f = _FACET[k]
            key = frozenset((vs[f[0]], vs[f[1]], vs[f[2]]))
            fmap.setdefault(key, []).append((g, k))
    for mates in fmap.values():
        if len(mates) == 2:
            (g1, k1), (g2, k2) = mates
            T.neigh[g1][k1] = g2
            T.neigh[g2][k2] = g1
    T.last = t
    for p in range(m):
        if p in (a, b, c, d):
            continue
        _insert3(T, p)
    out = [vs for i, vs in enumerate(T.verts) if T.alive[i] and vs[3] != INF]
    return np.asarray(out, dtype=np.int32).reshape(len(out), 4)


# --------------------------------------------------------------------------
# grid kernels: ball gather, cone searches (reach / Yao)
# --------------------------------------------------------------------------


def ball_gather(pts, order, cell_start, N, center, radius):
    """Sorted indices of points with |q - center| <= radius (closed)."""
    pts = np.asarray(pts)
    d = pts.shape[1]
    center = np.asarray(center, dtype=np.float64)
    r2 = radius * radius
    lo = np.maximum(0, np.floor((center - radius) * N).astype(np.int64))
    hi = np.minimum(N - 1, np.floor((center + radius) * N).astype(np.int64))
    hits = []
    for flat in _iter_box_cells(lo, hi, N, d, center, radius):
        idx = order[cell_start[flat] : cell_start[flat + 1]]
        if idx.size:
            d2 = np.sum((pts[idx] - center) ** 2, axis=1)
            hits.append(idx[d2 <= r2])
    if not hits:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(hits))


def _iter_box_cells(lo, hi, N, d, center, radius):
    """Flat ids of cells in [lo,hi] whose box is within `radius` of center."""
    r2 = radius * radius
    ranges = [range(int(lo[k]), int(hi[k]) + 1) for k in range(d)]
    import itertools

    for cell in itertools.product(*ranges):
        s = 0.0
        for k in range(d):
            clo, chi = cell[k] / N, (cell[k] + 1) / N
            x = center[k]
            if x < clo:
                s += (clo - x) ** 2
            elif x > chi:
                s += (x - chi) ** 2
        if s <= r2:
            flat = 0
            for c in cell:
                flat = flat * N + c
            yield flat


def _ring_cells(base, k, N, d):
    """Cells at Chebyshev distance exactly k from `base`, clipped to the grid."""
    import itertools

    if k == 0:
        yield tuple(base)
        return
    for cell in itertools.product(
        *[range(base[j] - k, base[j] + k + 1) for j in range(d)]
    ):
        if max(abs(cell[j] - base[j]) for j in range(d)) != k:
            continue
        if all(0 <= cell[j] < N for j in range(d)):
            yield cell


def cone_search_point(pts, order, cell_start, N, p_idx, dirs, cos_half, cutoff):
    """Nearest point and distance per cone around point p, searching with
    expanding cell rings and aborting once every survivor exceeds `cutoff`.

    Returns (best_idx, best_dist) arrays; a cone with no point strictly
    inside the cutoff gets best_idx -1.
    """
    pts = np.asarray(pts)
    d = pts.shape[1]
    ncones = dirs.shape[0]
    p = pts[p_idx]
    base = np.minimum(N - 1, np.floor(p * N).astype(np.int64))
    best_idx = np.full(ncones, -1, dtype=np.int64)
    best_dist = np.full(ncones, np.inf)
    kmax = N  # rings cover the whole grid in the worst case
    for k in range(kmax + 1):
        # all points within (k-1)/N of p are already scanned
        scanned_r = (k - 1) / N if k > 0 else 0.0
        pending = [
            c
            for c in range(ncones)
            if best_idx[c] < 0 or best_dist[c] > scanned_r
        ]
        if not pending or scanned_r >= cutoff:
            break
        for cell in _ring_cells(base, k, N, d):
            flat = 0
            for c in cell:
                flat = flat * N + c
            idx = order[cell_start[flat] : cell_start[flat + 1]]
            for q in idx:
                if q == p_idx:
                    continue
                v = pts[q] - p
                dist = float(np.sqrt(np.sum(v * v)))
                if dist >= cutoff or dist == 0.0:
                    continue
                dots = dirs @ v
                for c in range(ncones):
                    if dots[c] >= cos_half * dist:
                        if dist < best_dist[c] or (
                            dist == best_dist[c] and q < best_idx[c]
                        ):
                            best_dist[c] = dist
                            best_idx[c] = q
    return best_idx, best_dist


def reach_many(pts, order, cell_start, N, dirs, cos_half, cutoff, subset):
    """Per-point reach with cutoff: (reach[i], ok[i]) for each subset point.

    ok is False when some cone holds no point strictly closer than cutoff.
    """
    m = len(subset)
    reach = np.zeros(m)
    ok = np.zeros(m, dtype=bool)
    for i, p_idx in enumerate(subset):
        bi, bd = cone_search_point(
            pts, order, cell_start, N, int(p_idx), dirs, cos_half, cutoff
        )
        if np.all(bi >= 0):
            ok[i] = True
            reach[i] = float(bd.max())
    return reach, ok


def yao_edges(pts, order, cell_start, N, dirs, cos_half, cutoff):
    """Truncated Yao edges (i, j, w), i<j, deduplicated, sorted lexicographically."""
    n = len(pts)
    seen = {}
    for p in range(n):
        bi, bd = cone_search_point(pts, order, cell_start, N, p, dirs, cos_half, cutoff)
        for c in range(dirs.shape[0]):
            q = int(bi[c])
            if q >= 0:
                key = (p, q) if p < q else (q, p)
                seen.setdefault(key, float(bd[c]))
    if not seen:
        return (
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty(0),
        )
    keys = sorted(seen)
    ei = np.asarray([k[0] for k in keys], dtype=np.int64)
    ej = np.asarray([k[1] for k in keys], dtype=np.int64)
    w = np.asarray([seen[k] for k in keys])
    return ei, ej, w


def fortress_stars(pts, order, cell_start, N, dirs, cos_half, delta, subset):
    """Stars of fortress points: reach by doubling cone search, gather the
    2*reach ball, triangulate locally, keep the simplices at p.

    Returns (simplex rows, fallback point count). A point whose cone search
    fails within delta falls back to the 2*delta ball.
    """
    pts = np.asarray(pts)
    d = pts.shape[1]
    triangulate = dt2_triangulate if d == 2 else dt3_triangulate
    rows = []
    fallbacks = 0
    for p_idx in subset:
        p_idx = int(p_idx)
        bi, bd = cone_search_point(
            pts, order, cell_start, N, p_idx, dirs, cos_half, delta
        )
        if np.all(bi >= 0):
            radius = 2.0 * float(bd.max())
        else:
            radius = 2.0 * delta
            fallbacks += 1
        local = ball_gather(pts, order, cell_start, N, pts[p_idx], radius)
        if len(local) < d + 1:
            fallbacks += 1
            continue
        simp = triangulate(pts[local])
        pos = int(np.searchsorted(local, p_idx))
        mask = np.any(simp == pos, axis=1)
        if mask.any():
            rows.append(np.sort(local[simp[mask]], axis=1))
    if not rows:
        return np.empty((0, d + 1), dtype=np.int64), fallbacks
    return np.concatenate(rows, axis=0), fallbacks


# --------------------------------------------------------------------------
# k-d tree box queries (structure built in rangesearch.py; arrays shared)
# --------------------------------------------------------------------------


def kd_box_query(split_dim, split_val, left, right, start, end, perm, pts, lo, hi):
    """Indices (into the original point order) inside the closed box [lo, hi]."""
    out = []
    stack = [0]
    while stack:
        node = stack.pop()
        if left[node] < 0:
            idx = perm[start[node] : end[node]]
            sub = pts[idx]
            mask = np.all((sub >= lo) & (sub <= hi), axis=1)
            out.extend(idx[mask].tolist())
        else:
            dim = split_dim[node]
            val = split_val[node]
            if lo[dim] <= val:
                stack.append(left[node])
            if hi[dim] >= val:
                stack.append(right[node])
    return np.asarray(sorted(out), dtype=np.int64)


# --------------------------------------------------------------------------
# per-cell 2d hull chains (quadtree hull workhorse)
# --------------------------------------------------------------------------


def cell_chain_hulls(pts, order, starts):
    """Strict convex hull per group of lexicographically sorted point indices.

    `order` holds point indices grouped by cell, each group pre-sorted by
    (x, y); groups are order[starts[g]:starts[g+1]]. Returns concatenated
    hull indices plus group offsets.
    """
    xs = pts[:, 0]
    ys = pts[:, 1]
    out = []
    offs = [0]
    for g in range(len(starts) - 1):
        idx = order[starts[g] : starts[g + 1]]
        hull = _chain(xs, ys, idx)
        out.extend(hull)
        offs.append(len(out))
    return np.asarray(out, dtype=np.int64), np.asarray(offs, dtype=np.int64)


def _chain(xs, ys, idx):
    """Monotone chain on lexicographically sorted indices; strict hull, CCW."""
    m = len(idx)
    if m <= 2:
        if m == 2 and xs[idx[0]] == xs[idx[1]] and ys[idx[0]] == ys[idx[1]]:
            return [int(idx[0])]
        return [int(i) for i in idx]
    lower = []
    for i in idx:
        while len(lower) > 1 and (
            orient2d(
                xs[lower[-2]], ys[lower[-2]], xs[lower[-1]], ys[lower[-1]], xs[i], ys[i]
            )
            <= 0
        ):
            lower.pop()
        lower.append(int(i))
    upper = []
    for i in idx[::-1]:
        while len(upper) > 1 and (
            orient2d(
                xs[upper[-2]], ys[upper[-2]], xs[upper[-1]], ys[upper[-1]], xs[i], ys[i]
            )
            <= 0
        ):
            upper.pop()
        upper.append(int(i))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # collinear set degenerates to its two extremes
        return [lower[0], lower[-1]] if lower[0] != lower[-1] else [lower[0]]
    return hull


# --------------------------------------------------------------------------
# close-pair counting (distance selection tau kernel)
# --------------------------------------------------------------------------


def count_close_pairs_kernel(A, B, r):
    """Number of (a, b) pairs with |a-b| <= r, brute force (blocked numpy)."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if len(A) == 0 or len(B) == 0:
        return 0
    r2 = r * r
    total = 0
    block = max(1, int(4e6) // max(1, len(A)))
    for s in range(0, len(B), block):
        chunk = B[s : s + block]
        dx = A[:, None, 0] - chunk[None, :, 0]
        dy = A[:, None, 1] - chunk[None, :, 1]
        total += int(np.count_nonzero(dx * dx + dy * dy <= r2))
    return total
