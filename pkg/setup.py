from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("acdopt._speedups", sources=["src/acdopt/_speedups.pyx"])],
        compiler_directives={"language_level": "3"})
except ImportError:
    # pure-Python fallback kernels are selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
