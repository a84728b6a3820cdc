"""Builds the optional compiled enumeration kernel.

The package is fully functional without the extension: tracetutor._backend
falls back to the pure-Python kernel when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("tracetutor._kernel", ["src/tracetutor/_kernel.pyx"])],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
