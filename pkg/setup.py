"""Build script: compiles the Felsch enumeration kernel when Cython and a C
compiler are available.  The package works without the extension (a pure
Python twin is selected at import time), so a failed extension build is
downgraded to a warning instead of aborting the install.

Set ETANU_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing / broken toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the compiled enumeration kernel failed "
            f"({exc!r}); falling back to the pure Python kernel.",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if not os.environ.get("ETANU_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("etanu._felsch_c", ["src/etanu/_felsch_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        print("WARNING: Cython not available; installing pure Python only.", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass=cmdclass)
