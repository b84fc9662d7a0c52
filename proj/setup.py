# Copyright 2026 The Entlink Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""setuptools shim that delegates the extension build to CMake.

The compiled module is produced by the same CMake project that builds
the library, CLI and tests; this file only points the `_entlink` target
at the wheel's output directory.
"""

import os
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = os.path.abspath(os.path.dirname(__file__))
        # get_ext_fullpath ends in entlink/_entlink.<abi>.so; CMake
        # decides the file name, we only fix the directory.
        package_dir = os.path.abspath(os.path.dirname(self.get_ext_fullpath(ext.name)))
        build_dir = os.path.abspath(self.build_temp)
        os.makedirs(build_dir, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S",
                source_dir,
                "-B",
                build_dir,
                "-DCMAKE_BUILD_TYPE=Release",
                "-DENTLINK_BUILD_PYTHON=ON",
                f"-DENTLINK_PYTHON_OUTPUT_DIR={package_dir}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake",
                "--build",
                build_dir,
                "--target",
                "_entlink",
                "--parallel",
                str(os.cpu_count() or 2),
            ],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("entlink._entlink")],
    cmdclass={"build_ext": CMakeBuild},
)
