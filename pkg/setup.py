"""Build the optional compiled scan kernel; the package works without it."""
import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or failing
            print(f"warning: compiled kernel not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using pure Python")


ext_modules = []
if not os.environ.get("K3LATTICE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        from setuptools import Extension

        try:
            ext_modules = cythonize(
                [Extension("k3lattice._scan_ext", ["src/k3lattice/_scan_ext.pyx"],
                           extra_compile_args=["-O3"])],
                compiler_directives={"language_level": "3"},
            )
        except Exception as exc:
            print(f"warning: cythonize failed ({exc}); using pure Python")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
