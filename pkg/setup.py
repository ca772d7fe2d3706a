"""Build script: compiles the exact-elimination kernel when Cython and a C
compiler are available, and falls back to the pure-Python engine otherwise.

The package is fully functional without the extension; wittkit.linalg selects
the compiled engine at import time when present.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension (with a warning) if the local toolchain cannot build it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, etc.
            print(f"warning: skipping compiled kernel ({exc}); using pure-Python engine")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc}); using pure-Python engine")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not installed; using pure-Python engine")
        return []
    return cythonize(
        [Extension("wittkit._elim", ["src/wittkit/_elim.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
