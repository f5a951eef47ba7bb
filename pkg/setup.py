"""Builds the optional compiled kernel core.

The package is fully functional without the extension: tsmin.similarity
falls back to the pure-Python kernels when `tsmin._simcore` is missing.
Set TSMIN_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Compile the kernels if possible, otherwise install pure-Python only."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing or broken
            print(f"warning: compiled kernels skipped ({exc}); "
                  "pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "pure-Python fallback will be used")


extensions = []
if not os.environ.get("TSMIN_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("tsmin._simcore", ["src/tsmin/_simcore.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print("warning: Cython not available; pure-Python fallback will be used")

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
