"""Build script: compiles the optional Cython enumeration kernel.

The package is fully functional without the extension (a pure-Python/numpy
fallback is selected at import time), so a failed compile is not fatal.
"""

import platform

from setuptools import Extension, setup

compile_args = ["-O3"]
if platform.machine().lower() in ("x86_64", "amd64"):
    # hardware popcount; baseline x86-64 would emit a libcall per word
    compile_args.append("-mpopcnt")

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "quasitwist._kernels._ckernel",
                ["src/quasitwist/_kernels/_ckernel.pyx"],
                extra_compile_args=compile_args,
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
