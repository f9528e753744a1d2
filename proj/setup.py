import glob

from pybind11.setup_helpers import Pybind11Extension, ParallelCompile, build_ext
from setuptools import setup

ParallelCompile("RATENET_NPY_NUM_BUILD_JOBS", default=4).install()

ext = Pybind11Extension(
    "ratenet._ratenet",
    sorted(glob.glob("src/*.cpp")) + ["bindings/pymodule.cpp"],
    include_dirs=["include"],
    cxx_std=20,
    extra_compile_args=["-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
