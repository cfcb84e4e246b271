"""Build script: compiles the optional tree-kernel extension.

Set DKIBO_SKIP_EXT=1 to install without the compiled core; the package
then falls back to the pure-numpy kernels at import time.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("DKIBO_SKIP_EXT") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "dkibo.treekernel._compiled",
        sources=["src/dkibo/treekernel/_compiled.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=_extensions())
