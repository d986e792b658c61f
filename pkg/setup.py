from setuptools import setup

# The compiled MIS kernel is optional: duomap.mis falls back to the pure
# Python kernel when the extension is absent or fails to build.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize("src/duomap/_mis_core.pyx", language_level=3)
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
