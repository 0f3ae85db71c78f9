"""Build script: compiles the optional accelerated kernel when Cython is available.

The package is fully functional without the compiled extension; the pure
Python kernel is selected automatically at import time if the build below
was skipped or failed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/leibniz_gsb/_kernel_c.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
