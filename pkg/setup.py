import numpy as np
from setuptools import Extension, setup

# The compiled core is optional: the package falls back to pure numpy
# implementations in renewalflow.kernels when the extension is missing.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "renewalflow._native",
                ["src/renewalflow/_native.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
