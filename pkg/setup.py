"""Builds the optional compiled kernel extension.

The package works without it: sonobe._kernels falls back to the pure
Python implementation when the extension is missing or fails to build.
"""

from pathlib import Path

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and Path("src/sonobe/_kernels/_fast.pyx").exists():
    ext_modules = cythonize(
        [
            Extension(
                "sonobe._kernels._fast",
                sources=["src/sonobe/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
