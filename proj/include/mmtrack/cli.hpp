// SPDX-License-Identifier: Apache-2.0
//
// mmtrack: slot-level simulator for mmWave beam tracking procedures
// Copyright (C) 2026 The mmtrack authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef MMTRACK_CLI_HPP
#define MMTRACK_CLI_HPP

#include "mmtrack/engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mmtrack
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

// Entry point of the mmtrack tool. Subcommands: run, energy-table, replay.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

std::string summary_csv(const std::vector<PointSummary> &points);
std::string trials_csv(const std::vector<PointSummary> &points);
std::string trace_csv(const TrialResult &trial, double slot_s);

// Closed-form tracking energy per (grid value, architecture, scheme).
std::string energy_table_csv(const ScenarioConfig &base, const SweepSpec &grid, const std::vector<BfArch> &arches);

std::string sha256_hex(std::string_view data);

// Writes through a temporary file in the same directory and renames it into
// place. Throws std::ios_base::failure.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace mmtrack

#endif
