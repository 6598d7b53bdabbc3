"""Optional Cython build of the Bessel kernels.

When Cython or a C compiler is unavailable the package still installs and
falls back to the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("torsionlab._ckernels", ["src/torsionlab/_ckernels.pyx"], libraries=["m"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
