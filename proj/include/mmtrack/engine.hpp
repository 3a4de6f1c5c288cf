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
#ifndef MMTRACK_ENGINE_HPP
#define MMTRACK_ENGINE_HPP

#include "mmtrack/channel.hpp"
#include "mmtrack/config.hpp"
#include "mmtrack/energy.hpp"
#include "mmtrack/tracking.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmtrack
{

// Per-slot record kept when tracing is on.
struct SlotRecord
{
    double rate_bps = 0.0;
    int cell = -1; // -1 while the UE has no serving cell
    int enb_dir = -1;
    int ue_dir = -1;
    char event = 0; // 'R' refresh start, 'r' refinement start, 0 otherwise

    bool operator==(const SlotRecord &) const = default;
};

struct TrialOptions
{
    bool keep_trace = false;
    bool keep_event_log = true;
    // Called with (slot, link, channel) every slot; for channel dumps.
    std::function<void(long long, int, const ChannelState &)> channel_observer;
};

struct TrialResult
{
    std::uint64_t seed = 0;
    long long slots = 0;
    double avg_rate = 0.0; // bit/s
    std::vector<SlotRecord> trace;
    EnergyLedger energy;           // events actually executed
    long long handover_count = 0;  // refresh completions that changed cell
    long long beam_switch_count = 0;
    long long tracking_loss_slots = 0;
    long long skipped_refinements = 0;
    int enb_count = 0;
    std::uint64_t deployment_digest = 0;
    std::vector<EventRecord> event_log;

    bool operator==(const TrialResult &) const = default;
};

long long slot_count(const ScenarioConfig &cfg);

// Streams of a trial: derive_seed(seed, {1}) deployment, {2} channel,
// {3} interferer beams.
TrialResult run_trial(const ScenarioConfig &cfg, std::uint64_t seed, const TrialOptions &opts = {});

// One configuration of a batch. `overrides` are config assignments applied
// on top of the base config.
struct SweepPoint
{
    std::string parameter;
    std::string value;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct SweepSpec
{
    std::string parameter;
    std::vector<std::string> values;

    // "name=v1,v2,..."; throws ConfigError on malformed text.
    static SweepSpec parse(std::string_view text);
};

// Short names t_ref, T_PR, T_H map to their config keys; any config key is
// accepted as is.
std::string sweep_key(std::string_view parameter);
std::vector<SweepPoint> sweep_points(const SweepSpec &spec);

// Figure grids: fig3 (t_ref), fig4 (T_PR), fig5 (T_H), fig6 (T_PR x arch x
// scheme), fig7 (k_ref). Throws ConfigError for unknown names.
std::vector<SweepPoint> preset_points(std::string_view name);
const std::vector<std::string> &preset_names();

// Applies a point to a base config and validates the result.
ScenarioConfig apply_point(const ScenarioConfig &base, const SweepPoint &point);

struct PointSummary
{
    SweepPoint point;
    ScenarioConfig config;
    std::vector<TrialResult> trials;
    double mean_rate = 0.0;
    double stderr_rate = 0.0;
    double mean_energy = 0.0; // realized, J
    double stderr_energy = 0.0;
    EnergyLedger closed_form; // floor-count expressions
    double mean_handovers = 0.0;
    double mean_beam_switches = 0.0;
    double mean_refreshes = 0.0;
    double mean_refinements = 0.0;
    double mean_tracking_loss_slots = 0.0;
};

// Trial t uses derive_seed(master_seed, {t}) at every point so that points
// can be compared pairwise. Worker count: MMTRACK_WORKERS, else the hardware
// concurrency. Results are ordered by (point, trial).
std::vector<PointSummary> run_batch(const ScenarioConfig &base, const std::vector<SweepPoint> &points, int trials,
                                    std::uint64_t master_seed, const TrialOptions &opts = {},
                                    const std::function<void(int done, int total)> &progress = {});

std::uint64_t trial_seed(std::uint64_t master_seed, int trial);
int worker_count();

} // namespace mmtrack

#endif
