"""Builds the optional Cython SNF kernel; the package works without it."""
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # a missing compiler must not break the install: the pure-Python path remains
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print("warning: skipping compiled SNF kernel (%s)" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("warning: could not build %s (%s)" % (ext.name, exc))


try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ribbonsum._snf_kernel", ["src/ribbonsum/_snf_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
