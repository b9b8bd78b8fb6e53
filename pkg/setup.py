"""Build script: compiles the optional closure kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); the compiled kernel is what makes arity 7-8 closures fast.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("OPKOSZUL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/opkoszul/_closure_core.pyx"],
            language_level=3,
        )
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"opkoszul: skipping compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
