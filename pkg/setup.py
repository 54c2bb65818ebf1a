"""Build script.

The package is pure Python with one optional compiled extension,
``braidforge.kernels._core``, holding the hot enumeration loops
(subgroup closure, automorphism search, orbit transforms).  If Cython
or a C compiler is unavailable the build silently falls back to the
pure-Python kernel in ``braidforge.kernels.pure``; the two are
interchangeable.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/braidforge/kernels/_core.pyx",
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
