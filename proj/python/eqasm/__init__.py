# Copyright 2026 The eQASM Toolchain Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the eQASM assembler, simulator and DSE tools."""

from ._core import (
    ConfigError,
    DseError,
    __version__,
    assemble,
    config_hash,
    count_instructions,
    default_config,
    disassemble,
    dse_sweep,
    run,
    validate,
)

__all__ = [
    "ConfigError",
    "DseError",
    "__version__",
    "assemble",
    "config_hash",
    "count_instructions",
    "default_config",
    "disassemble",
    "dse_sweep",
    "run",
    "validate",
]
