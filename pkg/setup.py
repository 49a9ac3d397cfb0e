"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure numpy fallback is selected at
import time); building it makes the hot kernels (local Delaunay triangulations,
Yao-graph cone searches, the distance-selection sweep) 50-500x faster.

Build in place with:  python setup.py build_ext --inplace
"""

import os

import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize

    if not os.path.exists("src/randgeo/_kernels/_fast.pyx"):
        raise ImportError("kernel source missing; pure backend only")
    ext_modules = cythonize(
        "src/randgeo/_kernels/_fast.pyx",
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
    for ext in ext_modules:
        # -ffp-contract=off: no FMA contraction, so float results match the
        # pure-python backend bit for bit (predicate filters depend on this).
        ext.extra_compile_args = ["-O3", "-ffp-contract=off"]
        ext.include_dirs = [numpy.get_include()]
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
