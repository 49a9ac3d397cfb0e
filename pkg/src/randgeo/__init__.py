"""randgeo: geometry of uniformly random points in the unit cube.

Expected-linear-time constructions (convex hull via quadtree merging,
Delaunay triangulation via local stars, Euclidean MST via restricted
Boruvka over a quadtree), subquadratic distance-selection counting, and
toroidal pair-count concentration experiments, each paired with a
brute-force oracle.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .core import (
    ConstructionError,
    DegenerateInputError,
    ParameterError,
    Params,
    PointSet,
    derive_params,
    euclid_dist,
    sample_points,
    toroidal_dist,
)

__all__ = [
    "BACKEND",
    "ConstructionError",
    "DegenerateInputError",
    "ParameterError",
    "Params",
    "PointSet",
    "derive_params",
    "euclid_dist",
    "sample_points",
    "toroidal_dist",
    "__version__",
]
