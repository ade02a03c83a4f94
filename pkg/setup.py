import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "crouzeix_lab._kernels",
                ["src/crouzeix_lab/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # no Cython: install pure-Python only, crouzeix_lab.kernels falls back
    extensions = []

setup(ext_modules=extensions)
