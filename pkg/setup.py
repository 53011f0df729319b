"""Build script for the optional compiled Monte Carlo kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed build here only costs simulation speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "partarget._mcsim",
                sources=["src/partarget/_mcsim.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
