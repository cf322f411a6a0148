"""Build script: compiles the optional fast core.

The package works without the extension (a pure-Python core is selected at
import time), so a failed compile only costs speed.
"""

from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("semichain._core_cy", ["src/semichain/_core_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
