"""Build script: compiles the optional Cython kernel backend.

The compiled extension is a pure accelerator. If Cython, numpy headers or a
C compiler are unavailable the build silently skips it and the package runs
on the numpy fallback backend (qdephase.kernels._pykernels).
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install because the accelerator would not compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"qdephase: skipping compiled kernels ({exc!r})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"qdephase: skipping {ext.name} ({exc!r})")


def _extensions():
    try:
        import numpy as np
    except ImportError:
        return []
    from setuptools import Extension

    pyx = os.path.join("src", "qdephase", "kernels", "_ckernels.pyx")
    csrc = os.path.join("src", "qdephase", "kernels", "_ckernels.c")
    ext = Extension(
        "qdephase.kernels._ckernels",
        [pyx],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    try:
        from Cython.Build import cythonize

        return cythonize([ext], language_level=3)
    except ImportError:
        if os.path.exists(csrc):
            ext.sources = [csrc]
            return [ext]
        return []


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
