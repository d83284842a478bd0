from setuptools import Extension, setup

# The fleet Monte Carlo kernel is the only hot loop in the package; it is
# compiled when Cython + a C compiler are available and the package falls
# back to the numpy kernel otherwise (see oobleck/fleet.py).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "oobleck._fleet_core",
                ["src/oobleck/_fleet_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
