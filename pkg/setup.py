"""Build script: compiles the optional C extension for the hot kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler or Cython only costs speed.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("moufang3: Cython not available, building without the C kernel",
              file=sys.stderr)
        return []
    ext = Extension(
        "moufang3._speedups",
        ["src/moufang3/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
