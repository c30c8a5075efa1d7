# Copyright 2026 The migsim Authors
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
"""Measurement-guided exciton transport in Rydberg aggregates."""

from ._core import (
    CapacityExceeded,
    ConfigError,
    InvalidParameter,
    MigsimError,
    PhysicalParams,
    __version__,
    calibrate_kappa,
    compare_models,
    coupling_at,
    interaction_table,
    preset,
    preset_names,
    purity,
    rabi_period,
    run,
    shadow_radius,
    trace_distance,
    v_c,
    validate,
)

__all__ = [
    "CapacityExceeded",
    "ConfigError",
    "InvalidParameter",
    "MigsimError",
    "PhysicalParams",
    "__version__",
    "calibrate_kappa",
    "compare_models",
    "coupling_at",
    "interaction_table",
    "preset",
    "preset_names",
    "purity",
    "rabi_period",
    "run",
    "shadow_radius",
    "trace_distance",
    "v_c",
    "validate",
]
