from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        Extension(
            "courtmix._ckernels",
            ["src/courtmix/_ckernels.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        ),
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # no Cython: the numpy fallback in _pykernels is used
    ext_modules = []

setup(ext_modules=ext_modules)
