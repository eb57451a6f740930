from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("ternfield._axioms", ["src/ternfield/_axioms.pyx"])],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still installs; the NumPy fallback kernels
    # are selected at import time.
    extensions = []

setup(ext_modules=extensions)
