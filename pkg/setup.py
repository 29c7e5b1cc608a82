from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("dgcyclic._ckernels", ["src/dgcyclic/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

# the compiled kernel is optional; dgcyclic.linalg falls back to
# dgcyclic._pykernels when it is missing
setup(ext_modules=ext_modules)
