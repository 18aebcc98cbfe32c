"""Builds the optional compiled sampling kernels.

The package is fully functional without them (a numpy fallback is selected
at import time); the extension only speeds up the bilinear gather/scatter
inner loop of deformable attention.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "trajgraft.kernels._bilinear",
                ["src/trajgraft/kernels/_bilinear.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
