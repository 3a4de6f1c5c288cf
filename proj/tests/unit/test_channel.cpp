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

#include "mmtrack/channel.hpp"
#include "mmtrack/linkmetrics.hpp"

#include <cmath>
#include <numbers>

using namespace mmtrack;

namespace
{

const double kPi = std::numbers::pi;

ChannelState draw_link(std::uint64_t seed, Vec2 enb, Vec2 ue, const ScenarioConfig &cfg = {})
{
    Rng rng(seed);
    return regenerate_large_scale({enb, ue}, cfg, rng);
}

ChannelState draw_non_outage(std::uint64_t seed, LinkState want, double d = 40.0)
{
    for (std::uint64_t s = seed;; ++s)
    {
        ChannelState ch = draw_link(s, {0, 0}, {d, 0});
        if (ch.state == want)
            return ch;
    }
}

double total_power(const ChannelState &ch)
{
    double p = 0.0;
    for (const auto &c : ch.clusters)
        for (const auto &sp : c.subpaths)
            p += std::norm(sp.gain);
    return p;
}

} // namespace

TEST_SUITE("channel")
{
    TEST_CASE("state probabilities at the distance limits")
    {
        const PathlossParams p;
        const StateProbabilities near = state_probabilities(1.0, p);
        CHECK(near.outage == 0.0);
        CHECK(near.los == doctest::Approx(std::exp(-1.0 / 67.1)).epsilon(1e-12));
        const StateProbabilities mid = state_probabilities(100.0, p);
        CHECK(mid.outage == 0.0);
        const StateProbabilities far = state_probabilities(1e4, p);
        CHECK(far.outage == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(far.los < 1e-12);
        for (double d : {1.0, 10.0, 100.0, 156.0, 160.0, 200.0, 400.0, 1000.0})
        {
            const StateProbabilities s = state_probabilities(d, p);
            CHECK(s.outage >= 0.0);
            CHECK(s.los >= 0.0);
            CHECK(s.nlos >= 0.0);
            CHECK(s.outage + s.los + s.nlos == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("empirical state frequencies within 1 percent")
    {
        const PathlossParams p;
        for (double d : {50.0, 180.0})
        {
            Rng rng(static_cast<std::uint64_t>(d));
            const int n = 100000;
            int out = 0, los = 0, nlos = 0;
            for (int k = 0; k < n; ++k)
            {
                switch (draw_state(d, p, rng))
                {
                case LinkState::Outage:
                    ++out;
                    break;
                case LinkState::LoS:
                    ++los;
                    break;
                case LinkState::NLoS:
                    ++nlos;
                    break;
                }
            }
            const StateProbabilities s = state_probabilities(d, p);
            CHECK(std::abs(static_cast<double>(out) / n - s.outage) < 0.01);
            CHECK(std::abs(static_cast<double>(los) / n - s.los) < 0.01);
            CHECK(std::abs(static_cast<double>(nlos) / n - s.nlos) < 0.01);
        }
    }

    TEST_CASE("pathloss values")
    {
        const PathlossParams p;
        CHECK(pathloss_db(1.0, LinkState::LoS, p) == doctest::Approx(61.4).epsilon(1e-12));
        CHECK(pathloss_db(1.0, LinkState::NLoS, p) == doctest::Approx(72.0).epsilon(1e-12));
        CHECK(pathloss_db(100.0, LinkState::LoS, p) == doctest::Approx(101.4).epsilon(1e-12));
        for (double d : {3.0, 30.0, 120.0})
        {
            CHECK(pathloss_db(10 * d, LinkState::LoS, p) - pathloss_db(d, LinkState::LoS, p) == doctest::Approx(20.0).epsilon(1e-12));
            CHECK(pathloss_db(10 * d, LinkState::NLoS, p) - pathloss_db(d, LinkState::NLoS, p) ==
                  doctest::Approx(29.2).epsilon(1e-12));
        }
        CHECK_THROWS_AS(pathloss_db(10.0, LinkState::Outage, p), std::invalid_argument);
        CHECK_THROWS_AS(pathloss_db(0.0, LinkState::LoS, p), std::invalid_argument);
    }

    TEST_CASE("outage links are zero channels")
    {
        const ChannelState ch = draw_link(1, {0, 0}, {5000, 0});
        REQUIRE(ch.outage());
        CHECK(std::isinf(ch.pathloss_db));
        const ArrayGeometry ue = make_array({4, 4}, 0.5, 8), enb = make_array({8, 8}, 0.5, 16);
        const CMatrix h = channel_matrix(ch, ue, enb);
        CHECK(h.rows() == 16);
        CHECK(h.cols() == 64);
        CHECK(h.norm() == 0.0);
        const ScenarioConfig cfg;
        const double g = bf_gain(h, steering_vector(enb, 0.3), steering_vector(ue, 1.0));
        const double s = received_power_w(dbm_to_watts(cfg.tx_power_dbm), ch.pathloss_db, g);
        CHECK(std::isinf(sinr_db(s, 0.0, noise_power_w(cfg))));
        CHECK(sinr_db(s, 0.0, noise_power_w(cfg)) < 0);
        LinkResponse lr(ue, build_codebook(ue, 8), enb, build_codebook(enb, 16));
        lr.reset(ch);
        CHECK(lr.outage());
        CHECK(lr.gain(3, 2) == 0.0);
    }

    TEST_CASE("large-scale draw is deterministic in the seed")
    {
        const ChannelState a = draw_link(17, {10, 20}, {80, 50});
        const ChannelState b = draw_link(17, {10, 20}, {80, 50});
        REQUIRE(a.clusters.size() == b.clusters.size());
        CHECK(a.state == b.state);
        for (std::size_t c = 0; c < a.clusters.size(); ++c)
            for (std::size_t s = 0; s < a.clusters[c].subpaths.size(); ++s)
                CHECK(a.clusters[c].subpaths[s].gain == b.clusters[c].subpaths[s].gain);
    }

    TEST_CASE("power fractions form a sorted simplex and gains match them on average")
    {
        double power = 0.0;
        const int n = 2000;
        for (int k = 0; k < n; ++k)
        {
            const ChannelState ch = draw_link(1000 + k, {0, 0}, {60, 10});
            CHECK(ch.clusters.size() >= 1);
            double sum = 0.0;
            for (std::size_t c = 0; c < ch.clusters.size(); ++c)
            {
                CHECK(ch.clusters[c].power_fraction > 0.0);
                if (c > 0)
                    CHECK(ch.clusters[c].power_fraction <= ch.clusters[c - 1].power_fraction);
                sum += ch.clusters[c].power_fraction;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(ch.subpath_count() == ch.clusters.size() * 10);
            power += total_power(ch);
        }
        CHECK(std::abs(power / n - 1.0) < 0.05);
    }

    TEST_CASE("cluster count mean follows max(1, Poisson)")
    {
        const double lambda = 1.8;
        const double expected = std::exp(-lambda) + lambda; // P(0)*1 + E[N]
        double sum = 0.0;
        const int n = 20000;
        for (int k = 0; k < n; ++k)
            sum += static_cast<double>(draw_link(50000 + k, {0, 0}, {60, 0}).clusters.size());
        CHECK(std::abs(sum / n - expected) < 0.03);
    }

    TEST_CASE("LoS cluster carries the geometric bearing")
    {
        const ChannelState ch = draw_non_outage(7, LinkState::LoS);
        CHECK(ch.clusters[0].aod_center == doctest::Approx(0.0));
        CHECK(std::abs(std::abs(ch.clusters[0].aoa_center) - kPi) < 1e-12);
    }

    TEST_CASE("Doppler: zero velocity leaves phases unchanged")
    {
        const ScenarioConfig cfg;
        const ChannelState ch = draw_non_outage(3, LinkState::NLoS);
        const ChannelState next = update_small_scale(ch, ch.geometry, {0, 0}, 1e-3, cfg.carrier_hz, cfg.channel);
        for (std::size_t c = 0; c < ch.clusters.size(); ++c)
            for (std::size_t s = 0; s < ch.clusters[c].subpaths.size(); ++s)
                CHECK(next.clusters[c].subpaths[s].doppler_phase == ch.clusters[c].subpaths[s].doppler_phase);
        CHECK(next.age_since_large_scale == doctest::Approx(1e-3));
        CHECK_THROWS_AS(update_small_scale(ch, ch.geometry, {1, 0}, 0.0, cfg.carrier_hz, cfg.channel), std::invalid_argument);
    }

    TEST_CASE("Doppler phase increment examples")
    {
        const ScenarioConfig cfg;
        ChannelState ch;
        ch.state = LinkState::LoS;
        ch.geometry = {{0, 0}, {30, 0}};
        ch.distance = 30;
        ch.pathloss_db = pathloss_db(30, LinkState::LoS, cfg.channel.pathloss);
        Cluster cl;
        cl.power_fraction = 1.0;
        cl.aoa_center = 0.0;
        cl.subpaths = {Subpath{{1, 0}, 0, 0, 0}, Subpath{{1, 0}, 0, kPi / 2, 0}, Subpath{{1, 0}, 0, kPi, 0}};
        ch.clusters = {cl};
        const LinkGeometry next{{0, 0}, {30.02, 0}};
        const ChannelState out = update_small_scale(ch, next, {20, 0}, 1e-3, 28e9, cfg.channel);
        const double expected = 2 * kPi * 20 / (kSpeedOfLight / 28e9) * 1e-3;
        CHECK(std::abs(expected - 11.7367) < 1e-4);
        CHECK(out.clusters[0].subpaths[0].doppler_phase == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(out.clusters[0].subpaths[1].doppler_phase) < 1e-12);
        CHECK(out.clusters[0].subpaths[2].doppler_phase == doctest::Approx(-expected).epsilon(1e-12));
        CHECK(out.distance == doctest::Approx(30.02));
        CHECK(out.clusters[0].aoa_center == 0.0);
    }

    TEST_CASE("Doppler accumulates additively along a radial path")
    {
        const ScenarioConfig cfg;
        ChannelState ch = draw_non_outage(11, LinkState::NLoS);
        ChannelState one = ch, two = ch;
        const Vec2 v{20, 0};
        LinkGeometry g = ch.geometry;
        for (int s = 0; s < 2; ++s)
        {
            g.ue = g.ue + v * 1e-3;
            one = update_small_scale(one, g, v, 1e-3, cfg.carrier_hz, cfg.channel);
        }
        two = update_small_scale(two, g, v, 2e-3, cfg.carrier_hz, cfg.channel);
        for (std::size_t c = 0; c < ch.clusters.size(); ++c)
            for (std::size_t s = 0; s < ch.clusters[c].subpaths.size(); ++s)
                CHECK(one.clusters[c].subpaths[s].doppler_phase ==
                      doctest::Approx(two.clusters[c].subpaths[s].doppler_phase).epsilon(1e-12));
        CHECK(one.state == ch.state);
        CHECK(one.clusters.size() == ch.clusters.size());
    }

    TEST_CASE("state persists between large-scale updates")
    {
        const ScenarioConfig cfg;
        ChannelState ch = draw_non_outage(13, LinkState::LoS, 60.0);
        LinkGeometry g = ch.geometry;
        const Vec2 v{0, 20};
        for (int s = 0; s < 100; ++s)
        {
            g.ue = g.ue + v * 1e-3;
            ch = update_small_scale(ch, g, v, 1e-3, cfg.carrier_hz, cfg.channel);
            CHECK(ch.state == LinkState::LoS);
        }
        CHECK(ch.pathloss_db == doctest::Approx(pathloss_db(ch.distance, LinkState::LoS, cfg.channel.pathloss)));
    }

    TEST_CASE("arrival angles follow the bearing change")
    {
        const ScenarioConfig cfg;
        ChannelState ch = draw_non_outage(21, LinkState::LoS, 50.0);
        const LinkGeometry g{{0, 0}, {0, 50}};
        const double before_aod = ch.clusters[0].aod_center;
        ch = update_small_scale(ch, g, {0, 20}, 1e-3, cfg.carrier_hz, cfg.channel);
        CHECK(ch.clusters[0].aod_center - before_aod == doctest::Approx(kPi / 2).epsilon(1e-12));
        CHECK(std::cos(ch.clusters[0].aoa_center) == doctest::Approx(std::cos(-kPi / 2)).epsilon(1e-12));
        CHECK(std::sin(ch.clusters[0].aoa_center) == doctest::Approx(-1.0).epsilon(1e-12));
    }

    TEST_CASE("gain is quadratic in a common path scale")
    {
        const ChannelState ch = draw_non_outage(5, LinkState::NLoS);
        ChannelState scaled = ch;
        const std::complex<double> c(0.6, -1.3);
        for (auto &cl : scaled.clusters)
            for (auto &sp : cl.subpaths)
                sp.gain *= c;
        const ArrayGeometry ue = make_array({4, 4}, 0.5, 8), enb = make_array({8, 8}, 0.5, 16);
        const CVector wt = steering_vector(enb, 0.4), wr = steering_vector(ue, 2.2);
        CHECK(bf_gain(channel_matrix(scaled, ue, enb), wt, wr) ==
              doctest::Approx(std::norm(c) * bf_gain(channel_matrix(ch, ue, enb), wt, wr)).epsilon(1e-10));
    }

    TEST_CASE("factored gain equals the matrix route")
    {
        const ArrayGeometry ue = make_array({4, 4}, 0.5, 8), enb = make_array({8, 8}, 0.5, 16);
        const Codebook ucb = build_codebook(ue, 8), ecb = build_codebook(enb, 16);
        LinkResponse lr(ue, ucb, enb, ecb);
        const ScenarioConfig cfg;
        for (std::uint64_t seed = 1; seed <= 6; ++seed)
        {
            ChannelState ch = draw_non_outage(seed * 100, seed % 2 ? LinkState::LoS : LinkState::NLoS, 70.0);
            ch = update_small_scale(ch, {ch.geometry.enb, ch.geometry.ue + Vec2{0.5, 0.3}}, {20, 5}, 1e-3, cfg.carrier_hz, cfg.channel);
            const CMatrix h = channel_matrix(ch, ue, enb);
            lr.reset(ch);
            double peak = 0.0;
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 8; ++j)
                    peak = std::max(peak, bf_gain(h, ecb.vectors[i], ucb.vectors[j]));
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 8; ++j)
                {
                    const double direct = bf_gain(h, ecb.vectors[i], ucb.vectors[j]);
                    CHECK(std::abs(lr.gain(i, j) - direct) <= 1e-9 * peak);
                }
        }
    }
}
