import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ORIENTALS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # build the pure-Python package only
        cythonize = None
    if cythonize is not None:
        ext = Extension("orientals._ckernel", ["src/orientals/_ckernel.pyx"], optional=True)
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
