"""Build script for the optional compiled kernel.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a missing compiler only costs speed. Build in place with

    python setup.py build_ext --inplace
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken toolchain
            warnings.warn(f"compiled kernel skipped ({exc}); "
                          "falling back to the pure-numpy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel skipped ({exc}); "
                          "falling back to the pure-numpy backend")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernel")
        return []
    ext = Extension(
        "stickslip._kernels._core",
        ["src/stickslip/_kernels/_core.pyx"],
        # no -march flags: keeps results bit-identical to the numpy fallback
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
