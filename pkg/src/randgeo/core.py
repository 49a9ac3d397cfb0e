"""Points, metrics, global parameters, and seeded sampling.

Coordinates live in the half-open unit cube [0,1)^d so that grid indexing
(floor(x*N)) never lands on N. Sampling uses the Philox counter-based bit
generator with uniform floats produced by 53-bit mantissa division, which is
reproducible bit for bit across platforms and runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_C2 = 8.0
DEFAULT_C3 = 16.0


class ParameterError(ValueError):
    """Invalid argument to a randgeo operation."""


class ConstructionError(RuntimeError):
    """A build-time self-check failed (e.g. cone cover does not cover)."""


class DegenerateInputError(ValueError):
    """Input is affinely degenerate where general position is required."""


def default_c_d(d):
    return DEFAULT_C2 if d == 2 else DEFAULT_C3


@dataclass(frozen=True)
class PointSet:
    """n points in [0,1)^d with stable indices 0..n-1.

    ``seed`` records sampling provenance (0 when loaded from outside).
    The coordinate array is locked after construction; all operations
    treat point sets as immutable.
    """

    points: np.ndarray
    dim: int
    seed: int = 0

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ParameterError(f"expected an (n, {self.dim}) coordinate array")
        if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
            raise ParameterError("coordinates must lie in [0, 1)")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, i):
        return self.points[i]


@dataclass(frozen=True)
class Params:
    """Scale parameters phi = c_d*ln(n)/n and delta = phi^(1/d)."""

    c_d: float
    phi: float
    delta: float
    n: int
    dim: int


def sample_points(n, d, seed):
    """Draw n i.i.d. uniform points from [0,1)^d, reproducibly.

    Philox (a counter-based generator keyed on ``seed``) supplies raw 64-bit
    words; each coordinate is (word >> 11) * 2**-53, i.e. a uniform dyadic
    rational in [0,1) with full 53-bit mantissa resolution. Identical
    (n, d, seed) gives identical output on every platform.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if not 2 <= d <= 8:
        raise ParameterError(f"need 2 <= d <= 8, got {d}")
    bg = np.random.Philox(key=np.uint64(seed))
    raw = bg.random_raw(n * d).astype(np.uint64)
    coords = (raw >> np.uint64(11)) * (2.0 ** -53)
    return PointSet(coords.reshape(n, d), dim=d, seed=int(seed))


def euclid_dist(p, q):
    """Euclidean distance between two points of the same dimension."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ParameterError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return float(np.sqrt(np.sum((p - q) ** 2)))


def toroidal_dist(p, q):
    """Distance on the unit torus: per coordinate min(|x-y|, 1-|x-y|)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ParameterError(f"dimension mismatch: {p.shape} vs {q.shape}")
    diff = np.abs(p - q)
    wrapped = np.minimum(diff, 1.0 - diff)
    return float(np.sqrt(np.sum(wrapped**2)))


def toroidal_dist_many(points, q):
    """Toroidal distances from every row of ``points`` to ``q`` (vectorized)."""
    diff = np.abs(points - q)
    wrapped = np.minimum(diff, 1.0 - diff)
    return np.sqrt(np.sum(wrapped**2, axis=-1))


def derive_params(n, d, c_d=None):
    """Compute phi = c_d*ln(n)/n and delta = phi^(1/d).

    c_d defaults to 8.0 for d=2 and 16.0 for d=3 (calibrated so that the
    rare-event fallbacks in the hull/Delaunay/MST pipelines stay silent at
    the sample sizes the test suite exercises).
    """
    if c_d is None:
        c_d = default_c_d(d)
    if n < 16:
        raise ParameterError(f"need n >= 16, got {n}")
    if c_d <= 0:
        raise ParameterError(f"need c_d > 0, got {c_d}")
    phi = c_d * math.log(n) / n
    if phi > 1.0:
        raise ParameterError(f"n too small for c_d: phi = {phi:.4g} > 1")
    delta = phi ** (1.0 / d)
    return Params(c_d=float(c_d), phi=phi, delta=delta, n=n, dim=d)


def save_points_csv(ps, path):
    """One point per row, columns x0..x{d-1}, 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# randgeo points d={ps.dim} n={len(ps)} seed={ps.seed}\n")
        for row in ps.points:
            f.write(",".join("%.17g" % x for x in row) + "\n")


def load_points_csv(path):
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
        fields = dict(tok.split("=") for tok in header.split()[2:])
        rows = [
            [float(x) for x in line.split(",")]
            for line in f
            if line.strip()
        ]
    d = int(fields["d"])
    pts = np.asarray(rows, dtype=np.float64).reshape(len(rows), d)
    ps = PointSet(pts, dim=d, seed=int(fields.get("seed", 0)))
    if len(ps) != int(fields["n"]):
        raise ParameterError(f"header says n={fields['n']}, file has {len(ps)} rows")
    return ps
