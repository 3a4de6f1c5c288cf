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
#ifndef MMTRACK_TRACKING_HPP
#define MMTRACK_TRACKING_HPP

#include "mmtrack/config.hpp"
#include "mmtrack/linkmetrics.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace mmtrack
{

// Serving cell m with eNB direction D and UE direction d.
struct BeamTriple
{
    int cell = 0;
    int enb_dir = 0;
    int ue_dir = 0;

    bool operator==(const BeamTriple &) const = default;
};

// One pilot dwell: the cells in the plan transmit on eNB direction `enb_dir`
// while the UE listens on every direction of `ue_dirs` (more than one only
// for digital receivers). Offsets are relative to the sweep start.
struct Dwell
{
    double start = 0.0;
    double duration = 0.0;
    int enb_dir = 0;
    std::vector<int> ue_dirs;
};

struct SweepPlan
{
    SweepKind kind = SweepKind::Refresh;
    std::vector<int> cells; // cells whose pilots are measured
    std::vector<Dwell> dwells;
    double duration = 0.0;     // T_per * pairs / L
    double pilot_window = 0.0; // T_sig inside every T_per
    int parallelism = 1;
    int pairs() const;
};

// All N_eNB x N_UE pairs of every cell, UE directions grouped L at a time.
SweepPlan plan_refresh(const ScenarioConfig &cfg, int n_cells = 1);

// UE directions d_opt - k/2 .. d_opt + k/2 (mod N_UE) against every eNB
// direction of the serving cell only.
SweepPlan plan_refinement(const ScenarioConfig &cfg, const BeamTriple &current);
std::vector<int> refinement_directions(int d_opt, int k_ref, int n_ue_dirs);

// SINR of pilot (m, i, j) measured `offset` seconds into the sweep.
using MeasureFn = std::function<double(int cell, int enb_dir, int ue_dir, double offset)>;

// Incremental execution of a plan so that a sweep can straddle slots: each
// call to advance() measures the dwells that start before `elapsed`.
class SweepExecution
{
public:
    SweepExecution(SweepPlan plan, const ScenarioConfig &cfg, int n_cells);

    void advance(double elapsed, const MeasureFn &measure);
    bool complete() const { return next_ == plan_.dwells.size(); }
    const SweepPlan &plan() const { return plan_; }
    // Thresholded table; valid once complete().
    MeasurementTable table() const;

private:
    SweepPlan plan_;
    double gamma_db_;
    std::size_t next_ = 0;
    MeasurementTable table_;
};

MeasurementTable execute_sweep(const SweepPlan &plan, const MeasureFn &measure, const ScenarioConfig &cfg, int n_cells);

// Global argmax with ties to the lowest (m, i, j); nullopt on tracking loss.
std::optional<BeamTriple> select_refresh(const MeasurementTable &table);

enum class Outcome
{
    NoChange,
    BeamSwitch,
    Handover,
    Acquired,     // refresh found a link after a loss (or at start)
    TrackingLoss, // refresh found nothing above threshold
    Degraded      // refinement found nothing above threshold
};

std::string_view to_string(Outcome outcome);

struct RefinementResult
{
    Outcome outcome = Outcome::NoChange;
    BeamTriple beams;
};

// Argmax over the serving cell's entries. The previous pair is kept when it
// still attains the maximum; otherwise the lowest (i, j) maximiser wins.
RefinementResult select_refinement(const MeasurementTable &table, const BeamTriple &previous);

Outcome classify_refresh(const std::optional<BeamTriple> &before, const std::optional<BeamTriple> &after);

struct EventRecord
{
    double time = 0.0;
    SweepKind kind = SweepKind::Refresh;
    Outcome outcome = Outcome::NoChange;
    std::optional<BeamTriple> before;
    std::optional<BeamTriple> after;

    bool operator==(const EventRecord &) const = default;
};

enum class Action
{
    Idle,
    StartRefresh,
    StartRefinement
};

struct TrackingState
{
    std::optional<BeamTriple> serving;
    long long refresh_index = 0; // refreshes started so far
    double last_refresh_at = 0.0;
    double next_refresh_at = 0.0;
    std::optional<double> next_refinement_at; // Scheme B only
    int refinement_index = 0;                  // within the current interval
    double busy_until = 0.0;                   // end of the sweep in progress
    long long skipped_refinements = 0;
    std::optional<SweepKind> last_event;
    std::vector<EventRecord> event_log;
};

// Decides what starts at time `now`. Refreshes fire at n T_PR starting at 0.
// Scheme B refinements are due at last_refresh + n t_ref strictly before the
// next refresh; a due refinement is skipped when a sweep is still running,
// when there is no serving cell, or when it would overrun the next refresh.
// Timers move on either way.
Action step_scheduler(TrackingState &state, double now, const ScenarioConfig &cfg);

// Applies a finished sweep, logs the event and returns its outcome.
Outcome apply_refresh(TrackingState &state, double started_at, const MeasurementTable &table);
Outcome apply_refinement(TrackingState &state, double started_at, const MeasurementTable &table);

void write_event_log_csv(std::ostream &os, const std::vector<EventRecord> &log);

} // namespace mmtrack

#endif
