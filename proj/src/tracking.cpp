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
#include "mmtrack/tracking.hpp"

#include "mmtrack/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmtrack
{

namespace
{

// Relative slack for comparing event times built from sums of periods.
bool reached(double now, double at) { return now >= at - 1e-9 * std::max(1.0, std::abs(at)); }

std::vector<Dwell> group_dwells(const std::vector<int> &enb_dirs, const std::vector<int> &ue_dirs, int parallelism,
                                double pilot_period)
{
    std::vector<Dwell> dwells;
    double t = 0.0;
    // UE groups outer, eNB directions inner: the UE holds its receive beams
    // while the eNBs rotate through their codebooks.
    for (std::size_t g = 0; g < ue_dirs.size(); g += parallelism)
    {
        const std::size_t end = std::min(ue_dirs.size(), g + parallelism);
        std::vector<int> group(ue_dirs.begin() + g, ue_dirs.begin() + end);
        const double duration = pilot_period * static_cast<double>(group.size()) / parallelism;
        for (int i : enb_dirs)
        {
            dwells.push_back({t, duration, i, group});
            t += duration;
        }
    }
    return dwells;
}

std::vector<int> iota(int n)
{
    std::vector<int> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = k;
    return v;
}

} // namespace

int SweepPlan::pairs() const
{
    int n = 0;
    for (const auto &d : dwells)
        n += static_cast<int>(d.ue_dirs.size());
    return n;
}

SweepPlan plan_refresh(const ScenarioConfig &cfg, int n_cells)
{
    SweepPlan plan;
    plan.kind = SweepKind::Refresh;
    plan.cells = iota(n_cells);
    plan.parallelism = refresh_parallelism(cfg);
    plan.pilot_window = cfg.pilot_duration_s;
    plan.dwells = group_dwells(iota(cfg.enb_directions), iota(cfg.ue_directions), plan.parallelism, cfg.pilot_period_s);
    plan.duration = refresh_scan_time(cfg) / plan.parallelism;
    return plan;
}

std::vector<int> refinement_directions(int d_opt, int k_ref, int n_ue_dirs)
{
    std::vector<int> dirs;
    dirs.reserve(k_ref + 1);
    for (int o = -k_ref / 2; o <= k_ref / 2; ++o)
        dirs.push_back(((d_opt + o) % n_ue_dirs + n_ue_dirs) % n_ue_dirs);
    return dirs;
}

SweepPlan plan_refinement(const ScenarioConfig &cfg, const BeamTriple &current)
{
    SweepPlan plan;
    plan.kind = SweepKind::Refinement;
    plan.cells = {current.cell};
    plan.parallelism = refinement_parallelism(cfg);
    plan.pilot_window = cfg.pilot_duration_s;
    plan.dwells = group_dwells(iota(cfg.enb_directions), refinement_directions(current.ue_dir, cfg.k_ref, cfg.ue_directions),
                               plan.parallelism, cfg.pilot_period_s);
    plan.duration = refinement_scan_time(cfg) / plan.parallelism;
    return plan;
}

SweepExecution::SweepExecution(SweepPlan plan, const ScenarioConfig &cfg, int n_cells)
    : plan_(std::move(plan)), gamma_db_(cfg.sinr_threshold_db), table_(n_cells, cfg.enb_directions, cfg.ue_directions)
{
}

void SweepExecution::advance(double elapsed, const MeasureFn &measure)
{
    while (next_ < plan_.dwells.size() && plan_.dwells[next_].start < elapsed)
    {
        const Dwell &d = plan_.dwells[next_];
        for (int m : plan_.cells)
            for (int j : d.ue_dirs)
                table_.set(m, d.enb_dir, j, measure(m, d.enb_dir, j, d.start));
        ++next_;
    }
}

MeasurementTable SweepExecution::table() const { return threshold_filter(table_, gamma_db_); }

MeasurementTable execute_sweep(const SweepPlan &plan, const MeasureFn &measure, const ScenarioConfig &cfg, int n_cells)
{
    SweepExecution exec(plan, cfg, n_cells);
    exec.advance(std::numeric_limits<double>::infinity(), measure);
    return exec.table();
}

std::optional<BeamTriple> select_refresh(const MeasurementTable &t)
{
    std::optional<BeamTriple> best;
    double best_v = 0.0;
    for (int m = 0; m < t.cells(); ++m)
        for (int i = 0; i < t.enb_dirs(); ++i)
            for (int j = 0; j < t.ue_dirs(); ++j)
                if (t.eligible(m, i, j) && (!best || t.value(m, i, j) > best_v))
                {
                    best = BeamTriple{m, i, j};
                    best_v = t.value(m, i, j);
                }
    return best;
}

RefinementResult select_refinement(const MeasurementTable &t, const BeamTriple &previous)
{
    const int m = previous.cell;
    std::optional<BeamTriple> best;
    double best_v = 0.0;
    for (int i = 0; i < t.enb_dirs(); ++i)
        for (int j = 0; j < t.ue_dirs(); ++j)
            if (t.eligible(m, i, j) && (!best || t.value(m, i, j) > best_v))
            {
                best = BeamTriple{m, i, j};
                best_v = t.value(m, i, j);
            }
    if (!best)
        return {Outcome::Degraded, previous};
    if (t.eligible(m, previous.enb_dir, previous.ue_dir) && t.value(m, previous.enb_dir, previous.ue_dir) == best_v)
        return {Outcome::NoChange, previous};
    return {Outcome::BeamSwitch, *best};
}

std::string_view to_string(Outcome outcome)
{
    switch (outcome)
    {
    case Outcome::NoChange:
        return "no_change";
    case Outcome::BeamSwitch:
        return "beam_switch";
    case Outcome::Handover:
        return "handover";
    case Outcome::Acquired:
        return "acquired";
    case Outcome::TrackingLoss:
        return "tracking_loss";
    case Outcome::Degraded:
        return "degraded";
    }
    return "?";
}

Outcome classify_refresh(const std::optional<BeamTriple> &before, const std::optional<BeamTriple> &after)
{
    if (!after)
        return Outcome::TrackingLoss;
    if (!before)
        return Outcome::Acquired;
    if (before->cell != after->cell)
        return Outcome::Handover;
    if (*before != *after)
        return Outcome::BeamSwitch;
    return Outcome::NoChange;
}

Action step_scheduler(TrackingState &s, double now, const ScenarioConfig &cfg)
{
    if (reached(now, s.next_refresh_at))
    {
        s.last_refresh_at = s.next_refresh_at;
        ++s.refresh_index;
        s.next_refresh_at = static_cast<double>(s.refresh_index) * cfg.refresh_period_s;
        s.busy_until = now + refresh_scan_time(cfg) / refresh_parallelism(cfg);
        s.refinement_index = 0;
        s.next_refinement_at.reset();
        if (cfg.scheme == Scheme::B)
        {
            const double first = s.last_refresh_at + cfg.refinement_period_s;
            if (!reached(first, s.next_refresh_at))
            {
                s.refinement_index = 1;
                s.next_refinement_at = first;
            }
        }
        return Action::StartRefresh;
    }
    if (cfg.scheme != Scheme::B || !s.next_refinement_at || !reached(now, *s.next_refinement_at))
        return Action::Idle;

    ++s.refinement_index;
    const double following = s.last_refresh_at + s.refinement_index * cfg.refinement_period_s;
    if (reached(following, s.next_refresh_at))
        s.next_refinement_at.reset();
    else
        s.next_refinement_at = following;

    const double duration = refinement_scan_time(cfg) / refinement_parallelism(cfg);
    if (!reached(now, s.busy_until) || !s.serving || !reached(s.next_refresh_at, now + duration))
    {
        ++s.skipped_refinements;
        return Action::Idle;
    }
    s.busy_until = now + duration;
    return Action::StartRefinement;
}

Outcome apply_refresh(TrackingState &s, double started_at, const MeasurementTable &table)
{
    const std::optional<BeamTriple> next = select_refresh(table);
    const Outcome out = classify_refresh(s.serving, next);
    s.event_log.push_back({started_at, SweepKind::Refresh, out, s.serving, next});
    s.serving = next;
    s.last_event = SweepKind::Refresh;
    return out;
}

Outcome apply_refinement(TrackingState &s, double started_at, const MeasurementTable &table)
{
    if (!s.serving)
        throw std::logic_error("apply_refinement: no serving cell");
    const RefinementResult r = select_refinement(table, *s.serving);
    s.last_event = SweepKind::Refinement;
    if (r.outcome == Outcome::NoChange)
        return r.outcome;
    s.event_log.push_back({started_at, SweepKind::Refinement, r.outcome, s.serving, r.beams});
    s.serving = r.beams;
    return r.outcome;
}

void write_event_log_csv(std::ostream &os, const std::vector<EventRecord> &log)
{
    os << "time_s,kind,outcome,old_cell,old_enb_dir,old_ue_dir,new_cell,new_enb_dir,new_ue_dir\n";
    auto triple = [&](const std::optional<BeamTriple> &b) {
        if (b)
            os << b->cell << ',' << b->enb_dir << ',' << b->ue_dir;
        else
            os << "-1,-1,-1";
    };
    for (const auto &e : log)
    {
        os << format_double(e.time) << ',' << to_string(e.kind) << ',' << to_string(e.outcome) << ',';
        triple(e.before);
        os << ',';
        triple(e.after);
        os << '\n';
    }
}

} // namespace mmtrack
