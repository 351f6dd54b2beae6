from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/fibcf/_kernels/_screen.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python fallback kernels are used when the extension is absent.
    ext_modules = []

setup(ext_modules=ext_modules)
