"""Build hook for the optional compiled kernels.

The package is pure Python plus one Cython extension (minkdecomp._kernels).
If Cython is unavailable the build still succeeds and the library falls back
to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("minkdecomp._kernels", ["src/minkdecomp/_kernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
