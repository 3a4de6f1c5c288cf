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
#include "mmtrack/engine.hpp"

#include "mmtrack/beams.hpp"
#include "mmtrack/linkmetrics.hpp"
#include "mmtrack/random.hpp"
#include "mmtrack/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace mmtrack
{

namespace
{

bool reached(double now, double at) { return now >= at - 1e-9 * std::max(1.0, std::abs(at)); }

} // namespace

long long slot_count(const ScenarioConfig &cfg)
{
    return static_cast<long long>(std::ceil(cfg.sim_time_s / cfg.slot_s - 1e-9));
}

TrialResult run_trial(const ScenarioConfig &cfg, std::uint64_t seed, const TrialOptions &opts)
{
    Rng deploy_rng(derive_seed(seed, {1}));
    Rng channel_rng(derive_seed(seed, {2}));
    Rng beam_rng(derive_seed(seed, {3}));

    Deployment dep = deploy(cfg, deploy_rng);
    const int n_cells = static_cast<int>(dep.enb_positions.size());
    std::vector<int> users = background_load(dep);
    for (int &u : users)
        u += 1;

    const ArrayGeometry ue_geo = make_array(cfg.ue_array, cfg.element_spacing, cfg.ue_directions);
    const ArrayGeometry enb_geo = make_array(cfg.enb_array, cfg.element_spacing, cfg.enb_directions);
    const Codebook ue_cb = build_codebook(ue_geo, cfg.ue_directions);
    const Codebook enb_cb = build_codebook(enb_geo, cfg.enb_directions);

    std::vector<ChannelState> links(n_cells);
    std::vector<LinkResponse> resp(n_cells, LinkResponse(ue_geo, ue_cb, enb_geo, enb_cb));
    std::vector<double> path_gain(n_cells, 0.0);
    std::vector<int> tx_beam(n_cells, 0);

    const double p_tx = dbm_to_watts(cfg.tx_power_dbm);
    const double noise = noise_power_w(cfg);
    const Vec2 velocity = dep.test_ue_heading * cfg.ue_speed_mps;
    const double e_refresh = energy_event(SweepKind::Refresh, cfg);
    const double e_refinement = energy_event(SweepKind::Refinement, cfg);

    TrialResult res;
    res.seed = seed;
    res.enb_count = n_cells;
    res.deployment_digest = digest(dep);
    res.energy.arch = cfg.bf_arch;
    res.slots = slot_count(cfg);
    if (opts.keep_trace)
        res.trace.resize(res.slots);

    // Received power of cell m on (i, j) in the current slot.
    auto received = [&](int m, int i, int j) { return p_tx * path_gain[m] * resp[m].gain(i, j); };
    auto interference = [&](int serving, int j) {
        double sum = 0.0;
        for (int k = 0; k < n_cells; ++k)
            if (k != serving && path_gain[k] > 0.0)
                sum += received(k, tx_beam[k], j);
        return sum;
    };
    const MeasureFn measure = [&](int m, int i, int j, double) {
        const double intf = cfg.control_interference ? interference(m, j) : 0.0;
        return control_sinr_db(received(m, i, j), intf, noise, cfg);
    };

    TrackingState st;
    std::optional<SweepExecution> sweep;
    double sweep_start = 0.0;
    auto finish_sweep = [&]() {
        const MeasurementTable table = sweep->table();
        const Outcome out = sweep->plan().kind == SweepKind::Refresh ? apply_refresh(st, sweep_start, table)
                                                                     : apply_refinement(st, sweep_start, table);
        if (out == Outcome::Handover)
            ++res.handover_count;
        else if (out == Outcome::BeamSwitch)
            ++res.beam_switch_count;
        sweep.reset();
    };

    long long large_scale_index = 0;
    double rate_sum = 0.0;
    for (long long s = 0; s < res.slots; ++s)
    {
        const double t = static_cast<double>(s) * cfg.slot_s;
        if (s > 0)
            dep = advance_ue(std::move(dep), cfg.ue_speed_mps, cfg.slot_s);
        const Vec2 ue = dep.test_ue();

        if (reached(t, static_cast<double>(large_scale_index) * cfg.large_scale_period_s))
        {
            for (int m = 0; m < n_cells; ++m)
                links[m] = regenerate_large_scale({dep.enb_positions[m], ue}, cfg, channel_rng);
            ++large_scale_index;
        }
        else
        {
            for (int m = 0; m < n_cells; ++m)
                links[m] = update_small_scale(std::move(links[m]), {dep.enb_positions[m], ue}, velocity, cfg.slot_s, cfg.carrier_hz,
                                              cfg.channel);
        }
        for (int m = 0; m < n_cells; ++m)
        {
            resp[m].reset(links[m]);
            path_gain[m] = links[m].outage() ? 0.0 : std::pow(10.0, -0.1 * links[m].pathloss_db);
            tx_beam[m] = static_cast<int>(beam_rng.index(cfg.enb_directions));
            if (opts.channel_observer)
                opts.channel_observer(s, m, links[m]);
        }

        char event = 0;
        const Action action = step_scheduler(st, t, cfg);
        if (action != Action::Idle)
        {
            if (sweep)
            {
                sweep->advance(std::numeric_limits<double>::infinity(), measure);
                finish_sweep();
            }
            if (action == Action::StartRefresh)
            {
                sweep.emplace(plan_refresh(cfg, n_cells), cfg, n_cells);
                res.energy.record(SweepKind::Refresh, e_refresh);
                event = 'R';
            }
            else
            {
                sweep.emplace(plan_refinement(cfg, *st.serving), cfg, n_cells);
                res.energy.record(SweepKind::Refinement, e_refinement);
                event = 'r';
            }
            sweep_start = t;
        }

        // Data on the beams in force at the start of the slot.
        double rate = 0.0;
        if (st.serving)
        {
            const BeamTriple b = *st.serving;
            const double sinr = sinr_db(received(b.cell, b.enb_dir, b.ue_dir), interference(b.cell, b.ue_dir), noise);
            rate = rate_bps(sinr, users[b.cell], cfg.bandwidth_hz);
        }
        else
        {
            ++res.tracking_loss_slots;
        }
        rate_sum += rate;
        if (opts.keep_trace)
        {
            SlotRecord &r = res.trace[s];
            r.rate_bps = rate;
            r.event = event;
            if (st.serving)
            {
                r.cell = st.serving->cell;
                r.enb_dir = st.serving->enb_dir;
                r.ue_dir = st.serving->ue_dir;
            }
        }

        if (sweep)
        {
            const double elapsed = t + cfg.slot_s - sweep_start;
            sweep->advance(elapsed, measure);
            if (reached(elapsed, sweep->plan().duration))
                finish_sweep();
        }
    }

    res.avg_rate = res.slots > 0 ? rate_sum / static_cast<double>(res.slots) : 0.0;
    res.skipped_refinements = st.skipped_refinements;
    if (opts.keep_event_log)
        res.event_log = std::move(st.event_log);
    return res;
}

SweepSpec SweepSpec::parse(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 >= text.size())
        throw ConfigError("sweep", "expected NAME=v1,v2,...");
    SweepSpec spec;
    spec.parameter = std::string(text.substr(0, eq));
    std::string_view rest = text.substr(eq + 1);
    while (!rest.empty())
    {
        const auto comma = rest.find(',');
        std::string_view v = rest.substr(0, comma);
        if (v.empty())
            throw ConfigError("sweep", "empty value in list");
        spec.values.emplace_back(v);
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
        if (rest.empty())
            throw ConfigError("sweep", "trailing comma");
    }
    sweep_key(spec.parameter);
    return spec;
}

std::string sweep_key(std::string_view p)
{
    if (p == "t_ref")
        return "refinement_period_s";
    if (p == "T_PR")
        return "refresh_period_s";
    if (p == "T_H")
        return "large_scale_period_s";
    const auto &keys = config_keys();
    if (std::find(keys.begin(), keys.end(), p) == keys.end())
        throw ConfigError(std::string(p), "unknown sweep parameter");
    return std::string(p);
}

std::vector<SweepPoint> sweep_points(const SweepSpec &spec)
{
    const std::string key = sweep_key(spec.parameter);
    std::vector<SweepPoint> points;
    for (const auto &v : spec.values)
        points.push_back({spec.parameter, v, {{key, v}}});
    return points;
}

namespace
{

using Overrides = std::vector<std::pair<std::string, std::string>>;

void add_grid(std::vector<SweepPoint> &out, const std::string &param, const std::vector<std::string> &values, const Overrides &fixed)
{
    const std::string key = sweep_key(param);
    for (const auto &v : values)
    {
        Overrides o = fixed;
        o.emplace_back(key, v);
        out.push_back({param, v, std::move(o)});
    }
}

} // namespace

const std::vector<std::string> &preset_names()
{
    static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6", "fig7"};
    return names;
}

std::vector<SweepPoint> preset_points(std::string_view name)
{
    const std::vector<std::string> t_pr_grid{"0.05", "0.1", "0.15", "0.3", "0.6", "0.9"};
    std::vector<SweepPoint> pts;
    if (name == "fig3")
    {
        const Overrides fixed{{"refresh_period_s", "0.6"}, {"large_scale_period_s", "0.1"}, {"k_ref", "2"}};
        Overrides b = fixed;
        b.emplace_back("scheme", "B");
        add_grid(pts, "t_ref", {"0.01", "0.05", "0.1", "0.15", "0.3"}, b);
        Overrides a = fixed;
        a.emplace_back("scheme", "A");
        pts.push_back({"scheme", "A", a});
    }
    else if (name == "fig4")
    {
        const Overrides fixed{{"refinement_period_s", "0.01"}, {"large_scale_period_s", "0.1"}, {"k_ref", "2"}};
        for (const char *scheme : {"B", "A"})
        {
            Overrides o = fixed;
            o.emplace_back("scheme", scheme);
            add_grid(pts, "T_PR", t_pr_grid, o);
        }
    }
    else if (name == "fig5")
    {
        const std::vector<std::string> grid{"0.01", "0.05", "0.1", "0.15", "0.6"};
        const Overrides fixed{{"refresh_period_s", "0.3"}, {"k_ref", "2"}};
        for (const char *t_ref : {"0.01", "0.05"})
        {
            Overrides o = fixed;
            o.emplace_back("scheme", "B");
            o.emplace_back("refinement_period_s", t_ref);
            add_grid(pts, "T_H", grid, o);
        }
        Overrides a = fixed;
        a.emplace_back("scheme", "A");
        add_grid(pts, "T_H", grid, a);
    }
    else if (name == "fig6")
    {
        const Overrides fixed{{"refinement_period_s", "0.01"}, {"large_scale_period_s", "0.1"}, {"k_ref", "2"}};
        for (const char *arch : {"ABF", "DBF"})
            for (const char *scheme : {"A", "B"})
            {
                Overrides o = fixed;
                o.emplace_back("bf_arch", arch);
                o.emplace_back("scheme", scheme);
                add_grid(pts, "T_PR", t_pr_grid, o);
            }
    }
    else if (name == "fig7")
    {
        const Overrides fixed{
            {"scheme", "B"}, {"refinement_period_s", "0.05"}, {"refresh_period_s", "0.3"}, {"large_scale_period_s", "0.1"}};
        add_grid(pts, "k_ref", {"2", "4", "6", "8", "10"}, fixed);
    }
    else
    {
        throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    }
    return pts;
}

ScenarioConfig apply_point(const ScenarioConfig &base, const SweepPoint &point)
{
    ScenarioConfig cfg = base;
    for (const auto &[k, v] : point.overrides)
        set_config_value(cfg, k, v);
    validate(cfg);
    return cfg;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) { return derive_seed(master_seed, {static_cast<std::uint64_t>(trial)}); }

int worker_count()
{
    if (const char *env = std::getenv("MMTRACK_WORKERS"))
    {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{

void mean_stderr(const std::vector<double> &x, double &mean, double &err)
{
    const double n = static_cast<double>(x.size());
    mean = 0.0;
    err = 0.0;
    if (x.empty())
        return;
    for (double v : x)
        mean += v;
    mean /= n;
    if (x.size() < 2)
        return;
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    err = std::sqrt(ss / (n - 1.0) / n);
}

} // namespace

std::vector<PointSummary> run_batch(const ScenarioConfig &base, const std::vector<SweepPoint> &points, int trials,
                                    std::uint64_t master_seed, const TrialOptions &opts,
                                    const std::function<void(int, int)> &progress)
{
    std::vector<PointSummary> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        out[p].point = points[p];
        out[p].config = apply_point(base, points[p]);
        out[p].trials.resize(trials);
    }

    const int total = static_cast<int>(points.size()) * trials;
    std::atomic<int> next{0};
    std::atomic<int> done{0};
    std::mutex mu;
    std::exception_ptr error;
    auto work = [&]() {
        for (int task = next++; task < total; task = next++)
        {
            const int p = task / trials;
            const int t = task % trials;
            try
            {
                out[p].trials[t] = run_trial(out[p].config, trial_seed(master_seed, t), opts);
            }
            catch (...)
            {
                std::lock_guard lock(mu);
                if (!error)
                    error = std::current_exception();
            }
            const int d = ++done;
            if (progress)
            {
                std::lock_guard lock(mu);
                progress(d, total);
            }
        }
    };

    const int n_workers = std::min(worker_count(), std::max(1, total));
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);

    for (auto &ps : out)
    {
        std::vector<double> rate, energy;
        double ho = 0, bs = 0, rf = 0, rn = 0, loss = 0;
        for (const auto &r : ps.trials)
        {
            rate.push_back(r.avg_rate);
            energy.push_back(r.energy.total());
            ho += static_cast<double>(r.handover_count);
            bs += static_cast<double>(r.beam_switch_count);
            rf += static_cast<double>(r.energy.refresh_count);
            rn += static_cast<double>(r.energy.refinement_count);
            loss += static_cast<double>(r.tracking_loss_slots);
        }
        mean_stderr(rate, ps.mean_rate, ps.stderr_rate);
        mean_stderr(energy, ps.mean_energy, ps.stderr_energy);
        const double n = std::max(1, trials);
        ps.mean_handovers = ho / n;
        ps.mean_beam_switches = bs / n;
        ps.mean_refreshes = rf / n;
        ps.mean_refinements = rn / n;
        ps.mean_tracking_loss_slots = loss / n;
        ps.closed_form = total_energy(ps.config);
    }
    return out;
}

} // namespace mmtrack
