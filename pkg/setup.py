"""Build the optional Cython kernels; the package still installs without them."""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONFLICTDYN_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                "conflictdyn._ckernels",
                ["src/conflictdyn/_ckernels.pyx"],
                # keep float rounding identical to the pure-Python kernels
                extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math"],
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
