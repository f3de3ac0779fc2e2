"""CMake-driven build of the cascade._core extension.

The compiled module and the static core library are produced by the
project's own CMake tree; this shim points setuptools at it so that
`pip install -e . --no-build-isolation` works.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_dir = ext_path.parent
        ext_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DCASCADE_PYTHON=ON",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "cascade_python",
             "--parallel"],
            check=True,
        )

        built = build_dir / "python" / "cascade"
        candidates = sorted(built.glob("_core.*"))
        if not candidates:
            raise RuntimeError(f"no extension module produced under {built}")
        self.copy_file(str(candidates[0]), str(ext_path))


setup(
    packages=["cascade"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("cascade._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
