"""Build hook for the optional compiled kernel extension.

The package is fully functional without the extension: anonaug.kernels
falls back to the numpy implementation when the compiled module is
missing, so a failed build only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "anonaug.kernels.ckernels",
                ["src/anonaug/kernels/ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    print("anonaug: Cython/numpy unavailable at build time, "
          "skipping the compiled kernel (pure-python fallback will be used)")

setup(ext_modules=ext_modules)
