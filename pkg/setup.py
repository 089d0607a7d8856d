"""Builds the compiled weighted-median kernel when Cython is available.

The package works without the extension: sparsecenters.kernels falls back
to the numpy implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "sparsecenters.kernels._cykernels",
                ["src/sparsecenters/kernels/_cykernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
