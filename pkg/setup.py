"""Build script: compiles the optional DP kernel extension.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so any failure to build it is
downgraded to a warning.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("quiddity._kernel", ["src/quiddity/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython not available; installing with the pure-Python kernel only.")


class OptionalBuildExt(build_ext):
    """build_ext that tolerates compiler failures instead of aborting the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler/toolchain missing
            warnings.warn(f"Skipping compiled kernel ({exc}); pure-Python kernel will be used.")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"Skipping {ext.name} ({exc}); pure-Python kernel will be used.")


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
