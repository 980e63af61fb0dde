"""Build script: compiles the optional Cython integration kernel.

The package works without the extension (a pure-Python loop is selected at
import time); the extension is marked optional so installation never fails
on machines without a C toolchain.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nonholo_es._fastloop",
                ["src/nonholo_es/_fastloop.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
