# SPDX-License-Identifier: Apache-2.0
#
# mmtrack: slot-level simulator for mmWave beam tracking procedures
# Copyright (C) 2026 The mmtrack authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Slot-level simulator for mmWave beam tracking procedures."""

from ._mmtrack import (
    Config,
    ConfigError,
    __version__,
    bf_gain,
    config_keys,
    energy_event,
    load_config,
    min_refinement_period,
    min_refresh_period,
    parse_config,
    power_abf,
    power_dbf,
    preset_names,
    rate_bps,
    refinement_directions,
    refinement_duration,
    refresh_duration,
    run_batch,
    run_trial,
    sinr_db,
    steering_vector,
    summary_csv_for,
    total_energy,
)

__all__ = [
    "Config",
    "ConfigError",
    "__version__",
    "bf_gain",
    "config_keys",
    "energy_event",
    "load_config",
    "min_refinement_period",
    "min_refresh_period",
    "parse_config",
    "power_abf",
    "power_dbf",
    "preset_names",
    "rate_bps",
    "refinement_directions",
    "refinement_duration",
    "refresh_duration",
    "run_batch",
    "run_trial",
    "sinr_db",
    "steering_vector",
    "summary_csv_for",
    "total_energy",
]
