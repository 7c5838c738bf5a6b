from setuptools import Extension, setup
import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:  # pure-python install; the numpy fallback is used at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "twistguide._kernels",
                ["src/twistguide/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
