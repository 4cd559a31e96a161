"""Build script for the optional compiled cut-enumeration kernel.

The package works without the extension (a pure-Python fallback is selected at
import time), so a failed compile downgrades to a warning instead of aborting
the install.
"""
import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "garside_wb.kernels._cutcore",
                ["src/garside_wb/kernels/_cutcore.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only without cython
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
