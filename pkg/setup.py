import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: the package
# falls back to the numpy implementations in bosonic_rb._kernels_py when the
# extension is absent.  Set BOSONIC_RB_NO_EXT=1 to skip building it.
extensions = []
if not os.environ.get("BOSONIC_RB_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "bosonic_rb._kernels",
                    ["src/bosonic_rb/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=extensions)
