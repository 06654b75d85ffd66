"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so a missing compiler only costs speed.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - compiler-dependent
            warnings.warn(f"fast kernel build skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - compiler-dependent
            warnings.warn(f"fast kernel build skipped for {ext.name}: {exc}")


def _extensions():
    import os

    pyx = "src/cascadekit/_kernels/_fastcore.pyx"
    c_source = "src/cascadekit/_kernels/_fastcore.c"
    if os.path.exists(pyx):
        try:
            from Cython.Build import cythonize

            return cythonize(
                [Extension("cascadekit._kernels._fastcore", [pyx])],
                compiler_directives={"language_level": "3"},
            )
        except ImportError:  # pragma: no cover - build-time dependency
            pass
    if os.path.exists(c_source):  # sdist installs without Cython use the shipped C
        return [Extension("cascadekit._kernels._fastcore", [c_source])]
    return []


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
