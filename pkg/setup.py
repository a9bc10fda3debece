"""Build hook: compile the optional Cython kernel when a toolchain is available.

The package must remain importable (pure-Python backend) when compilation
fails, so every failure here is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lgq/_kernel/_ckernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - toolchain-dependent
    print(f"lgq: skipping compiled kernel ({exc}); pure-Python backend will be used")

setup(ext_modules=ext_modules)
