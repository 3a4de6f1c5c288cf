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
#include "doctest.h"

#include "mmtrack/engine.hpp"

#include <cmath>
#include <numeric>

using namespace mmtrack;

namespace
{

ScenarioConfig short_run(double sim_time = 1.0)
{
    ScenarioConfig cfg;
    cfg.sim_time_s = sim_time;
    cfg.refresh_period_s = 0.3;
    return cfg;
}

} // namespace

TEST_SUITE("engine")
{
    TEST_CASE("slot count")
    {
        ScenarioConfig cfg;
        CHECK(slot_count(cfg) == 10000);
        cfg.sim_time_s = 0.0105;
        CHECK(slot_count(cfg) == 11);
        cfg.sim_time_s = 0.3;
        CHECK(slot_count(cfg) == 300);
    }

    TEST_CASE("a default-length trial has 10000 traced slots and avg equals the trace mean")
    {
        ScenarioConfig cfg;
        TrialOptions opts;
        opts.keep_trace = true;
        const TrialResult r = run_trial(cfg, 3, opts);
        REQUIRE(r.trace.size() == 10000);
        CHECK(r.slots == 10000);
        double sum = 0.0;
        long long lost = 0;
        for (const auto &s : r.trace)
        {
            sum += s.rate_bps;
            lost += s.cell < 0;
            CHECK(s.rate_bps >= 0.0);
        }
        CHECK(r.avg_rate == doctest::Approx(sum / 10000).epsilon(1e-12));
        CHECK(lost == r.tracking_loss_slots);
        CHECK(r.trace[0].event == 'R');
        CHECK(r.avg_rate > 0.0);
    }

    TEST_CASE("trial is a deterministic function of (config, seed)")
    {
        const ScenarioConfig cfg = short_run();
        TrialOptions opts;
        opts.keep_trace = true;
        const TrialResult a = run_trial(cfg, 99, opts);
        const TrialResult b = run_trial(cfg, 99, opts);
        CHECK(a == b);
        const TrialResult c = run_trial(cfg, 100, opts);
        CHECK(c.deployment_digest != a.deployment_digest);
    }

    TEST_CASE("scheme B with t_ref >= T_PR reproduces scheme A")
    {
        for (std::uint64_t seed : {1u, 2u, 3u})
        {
            ScenarioConfig b = short_run(2.0);
            b.refinement_period_s = 0.3;
            ScenarioConfig a = b;
            a.scheme = Scheme::A;
            const TrialResult ra = run_trial(a, seed), rb = run_trial(b, seed);
            CHECK(ra.avg_rate == rb.avg_rate);
            CHECK(rb.energy.refinement_count == 0);
            CHECK(ra.event_log == rb.event_log);
        }
    }

    TEST_CASE("counts agree with the event log and the ledger with per-event energy")
    {
        for (BfArch arch : {BfArch::Abf, BfArch::Dbf})
        {
            ScenarioConfig cfg = short_run(2.0);
            cfg.bf_arch = arch;
            for (std::uint64_t seed = 10; seed < 14; ++seed)
            {
                TrialOptions opts;
                opts.keep_trace = true;
                const TrialResult r = run_trial(cfg, seed, opts);
                long long handovers = 0, switches = 0, refreshes = 0;
                for (const auto &e : r.event_log)
                {
                    handovers += e.outcome == Outcome::Handover;
                    switches += e.outcome == Outcome::BeamSwitch;
                    refreshes += e.kind == SweepKind::Refresh;
                    if (e.kind == SweepKind::Refinement)
                    {
                        REQUIRE(e.before.has_value());
                        CHECK(e.after->cell == e.before->cell);
                        CHECK(e.outcome != Outcome::Handover);
                    }
                }
                CHECK(handovers == r.handover_count);
                CHECK(switches == r.beam_switch_count);
                CHECK(refreshes == r.energy.refresh_count);
                long long r_marks = 0, f_marks = 0;
                for (const auto &s : r.trace)
                {
                    r_marks += s.event == 'R';
                    f_marks += s.event == 'r';
                }
                CHECK(r_marks == r.energy.refresh_count);
                CHECK(f_marks == r.energy.refinement_count);
                CHECK(r.energy.refresh_count == 7); // t = 0, 0.3, ..., 1.8
                const double er = energy_event(SweepKind::Refresh, cfg), ef = energy_event(SweepKind::Refinement, cfg);
                CHECK(std::abs(r.energy.refresh_energy - r.energy.refresh_count * er) <= 1e-12 * std::max(1.0, r.energy.refresh_energy));
                CHECK(std::abs(r.energy.refinement_energy - r.energy.refinement_count * ef) <=
                      1e-12 * std::max(1.0, r.energy.refinement_energy));
                CHECK(r.energy.arch == arch);
            }
        }
    }

    TEST_CASE("realized refinements never exceed the scheduled ones")
    {
        const ScenarioConfig cfg = short_run(3.0);
        const TrialResult r = run_trial(cfg, 5);
        // Due slots per interval: last + n t_ref strictly before the next refresh.
        const long long due = 10 * 29;
        CHECK(r.energy.refinement_count + r.skipped_refinements == due);
    }

    TEST_CASE("a 1 x 1 batch equals run_trial")
    {
        const ScenarioConfig cfg = short_run();
        const SweepPoint point{"seed", "-", {}};
        const auto batch = run_batch(cfg, {point}, 1, 77);
        REQUIRE(batch.size() == 1);
        REQUIRE(batch[0].trials.size() == 1);
        const TrialResult direct = run_trial(cfg, trial_seed(77, 0));
        CHECK(batch[0].trials[0] == direct);
        CHECK(batch[0].mean_rate == direct.avg_rate);
        CHECK(batch[0].stderr_rate == 0.0);
        CHECK(batch[0].mean_energy == direct.energy.total());
    }

    TEST_CASE("batch points share trial seeds and deployments")
    {
        const ScenarioConfig cfg = short_run();
        const auto points = sweep_points(SweepSpec::parse("t_ref=0.01,0.05"));
        const auto batch = run_batch(cfg, points, 3, 5);
        REQUIRE(batch.size() == 2);
        for (int t = 0; t < 3; ++t)
        {
            CHECK(batch[0].trials[t].seed == batch[1].trials[t].seed);
            CHECK(batch[0].trials[t].seed == trial_seed(5, t));
            CHECK(batch[0].trials[t].deployment_digest == batch[1].trials[t].deployment_digest);
        }
        CHECK(batch[1].config.refinement_period_s == 0.05);
        double mean = 0.0;
        for (const auto &r : batch[0].trials)
            mean += r.avg_rate / 3;
        CHECK(batch[0].mean_rate == doctest::Approx(mean).epsilon(1e-12));
        CHECK(batch[0].closed_form == total_energy(batch[0].config));
    }

    TEST_CASE("batch results do not depend on worker count")
    {
        const ScenarioConfig cfg = short_run(0.5);
        const auto points = sweep_points(SweepSpec::parse("T_PR=0.1,0.3"));
        setenv("MMTRACK_WORKERS", "1", 1);
        const auto one = run_batch(cfg, points, 3, 9);
        setenv("MMTRACK_WORKERS", "3", 1);
        const auto three = run_batch(cfg, points, 3, 9);
        unsetenv("MMTRACK_WORKERS");
        for (std::size_t p = 0; p < one.size(); ++p)
            CHECK(one[p].trials == three[p].trials);
    }

    TEST_CASE("preset grids")
    {
        CHECK(preset_points("fig3").size() == 6);
        CHECK(preset_points("fig4").size() == 12);
        CHECK(preset_points("fig5").size() == 15);
        CHECK(preset_points("fig6").size() == 24);
        CHECK(preset_points("fig7").size() == 5);
        CHECK_THROWS_AS(preset_points("fig9"), ConfigError);
        for (const auto &name : preset_names())
            for (const auto &p : preset_points(name))
                CHECK_NOTHROW(apply_point(ScenarioConfig{}, p));
        const auto fig3 = preset_points("fig3");
        const ScenarioConfig last = apply_point(ScenarioConfig{}, fig3.back());
        CHECK(last.scheme == Scheme::A);
        CHECK(last.refresh_period_s == 0.6);
        const ScenarioConfig k10 = apply_point(ScenarioConfig{}, preset_points("fig7").back());
        CHECK(k10.k_ref == 10);
    }

    TEST_CASE("sweep parsing")
    {
        const SweepSpec s = SweepSpec::parse("T_PR=0.05,0.1");
        CHECK(s.parameter == "T_PR");
        CHECK(s.values == std::vector<std::string>{"0.05", "0.1"});
        CHECK(sweep_key("t_ref") == "refinement_period_s");
        CHECK(sweep_key("T_H") == "large_scale_period_s");
        CHECK(sweep_key("k_ref") == "k_ref");
        CHECK_THROWS_AS(SweepSpec::parse("T_PR"), ConfigError);
        CHECK_THROWS_AS(SweepSpec::parse("T_PR="), ConfigError);
        CHECK_THROWS_AS(SweepSpec::parse("T_PR=0.1,"), ConfigError);
        CHECK_THROWS_AS(SweepSpec::parse("T_PR=0.1,,0.2"), ConfigError);
        CHECK_THROWS_AS(SweepSpec::parse("warp=1"), ConfigError);
        const auto pts = sweep_points(SweepSpec::parse("T_PR=0.01"));
        CHECK_THROWS_AS(apply_point(ScenarioConfig{}, pts[0]), ConfigError);
    }
}
