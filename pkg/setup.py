from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension("kirbycalc._speedups", ["src/kirbycalc/_speedups.pyx"], optional=True),
]

setup(ext_modules=cythonize(extensions, language_level=3) if cythonize else [])
