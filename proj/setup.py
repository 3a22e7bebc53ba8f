from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("ILOUVAIN_BUILD_JOBS", default=0).install()

ext = Pybind11Extension(
    "ilouvain._core",
    sorted(glob("src/*.cpp")) + ["bindings/module.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-pthread"],  # httplib spawns the retry client threads
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
