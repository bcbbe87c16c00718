"""Build hooks: compile the descent-path kernel extension when Cython is available.

The package is fully functional without the extension; descent_path falls back
to the pure-Python kernel at import time.  Set HWTHETA_NO_EXT=1 to skip the
build explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HWTHETA_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/hwtheta/_descent_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
