"""Build script for the optional compiled condensation kernel.

The package is fully functional as pure Python; the Cython extension only
accelerates the hot Pfaffian/nullity kernel. A failed extension build is
downgraded to a warning so the pure-Python fallback can still be installed
(set CAUCHON_PURE_PYTHON=1 to skip the extension deliberately).
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel {ext.name}: {exc}")


ext_modules = []
if not os.environ.get("CAUCHON_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "cauchon._kernel",
                    ["src/cauchon/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
