"""Build script for the compiled stepping kernel.

The extension is optional: if Cython or a C compiler is unavailable the
package installs without it and falls back to the numpy kernel at import
time. Rebuild in place with

    python setup.py build_ext --inplace
"""
from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "dcflow._kernels_cy",
                ["src/dcflow/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off: no FMA contraction, so the compiled
                # kernel stays bit-identical to the numpy fallback.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
