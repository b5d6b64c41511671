import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RIBAUCOUR_NO_EXT"):
    try:
        from Cython.Build import cythonize

        modules = cythonize(
            [Extension("ribaucour._kernels", ["src/ribaucour/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
        for m in modules:
            m.extra_compile_args.append("-O3")
        ext_modules = modules
    except ImportError:
        # no Cython: the pure-python backend is selected at import time
        ext_modules = []

setup(ext_modules=ext_modules)
