"""Build script.  The compiled kernel is optional: if Cython or a C compiler
is unavailable the package installs with the pure-Python backend only."""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise fall back silently."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"modkit: skipping compiled kernel ({exc}); pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"modkit: skipping {ext.name} ({exc}); pure-Python backend will be used")


ext_modules = []
if not os.environ.get("MODKIT_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "modkit._ckernel",
                    ["src/modkit/_ckernel.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        print("modkit: Cython not available; pure-Python backend will be used")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
