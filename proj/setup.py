"""Builds the _qdw extension by delegating to the project's CMake build.

The extension target is compiled into <build_temp>/python/qdw/ by CMake and
then copied to wherever setuptools expects the module (the source tree for
editable installs, the wheel staging area otherwise)."""

import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_qdw", "--parallel"],
            check=True,
        )

        suffix = sysconfig.get_config_var("EXT_SUFFIX")
        built = build_dir / "python" / "qdw" / f"_qdw{suffix}"
        if not built.exists():
            raise FileNotFoundError(f"CMake did not produce {built}")
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)


setup(
    ext_modules=[CMakeExtension("qdw._qdw")],
    cmdclass={"build_ext": CMakeBuild},
)
