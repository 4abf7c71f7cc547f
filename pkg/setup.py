"""Builds the optional Cython kernels; the package works without them."""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONETORSION_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension("conetorsion._kernels._ckernels",
                        ["src/conetorsion/_kernels/_ckernels.pyx"])
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)

setup(ext_modules=ext_modules)
