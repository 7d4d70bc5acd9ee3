from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled kernels; NumPy versions are used
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("weberscan._native", ["src/weberscan/_native.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
