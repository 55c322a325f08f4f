import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("JACOBIGEOM_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure fallback is used at import time
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("jacobigeom._ckernel", ["src/jacobigeom/_ckernel.pyx"])],
            language_level=3, quiet=True)

setup(ext_modules=ext_modules)
