"""Builds the incplan._core extension with setuptools + pybind11.

The canonical development build goes through CMake (which also runs the C++
tests); this file exists so `pip install . --no-build-isolation` works
without CMake.
"""

from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "incplan._core",
    sorted(["bindings/module.cpp", *glob("src/*.cpp")]),
    include_dirs=["include", "vendor"],
    cxx_std=20,
    define_macros=[("VERSION_INFO", "0.1.0")],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
