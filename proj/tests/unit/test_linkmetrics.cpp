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

#include "mmtrack/linkmetrics.hpp"
#include "mmtrack/random.hpp"

#include <cmath>
#include <limits>

using namespace mmtrack;

namespace
{

const double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_SUITE("linkmetrics")
{
    TEST_CASE("SINR examples")
    {
        CHECK(sinr_db(1.0, 0.0, 1.0) == doctest::Approx(0.0));
        CHECK(sinr_db(0.0, 1.0, 1.0) == -kInf);
        CHECK(std::abs(sinr_db(1e-9, 5e-10, 5e-10)) < 1e-12);
        CHECK(sinr_db(100.0, 0.0, 1.0) == doctest::Approx(20.0));

        LinkBudget serving{1.0, 1e9, 1e3, 1e-6};
        CHECK(serving.received_w() == doctest::Approx(1e-6));
        CHECK(std::abs(sinr_db(serving, {})) < 1e-12);
        LinkBudget blocked{1.0, kInf, 1e3, 1e-6};
        CHECK(blocked.received_w() == 0.0);
        CHECK(sinr_db(serving, {blocked}) == doctest::Approx(0.0));
        LinkBudget other{1.0, 1e9, 1e3, 1e-6};
        CHECK(sinr_db(serving, {other}) == doctest::Approx(-10 * std::log10(2.0)));
        CHECK(received_power_w(1.0, 90.0, 10.0) == doctest::Approx(1e-8));
        CHECK(received_power_w(1.0, kInf, 10.0) == 0.0);
    }

    TEST_CASE("rate examples")
    {
        CHECK(rate_bps(0.0, 1, 1e9) == doctest::Approx(1e9).epsilon(1e-12));
        CHECK(rate_bps(0.0, 2, 1e9) == doctest::Approx(5e8).epsilon(1e-12));
        CHECK(rate_bps(-kInf, 1, 1e9) == 0.0);
        CHECK(rate_bps(10 * std::log10(3.0), 1, 1e9) == doctest::Approx(2e9).epsilon(1e-12));
        CHECK_THROWS_AS(rate_bps(0.0, 0, 1e9), std::invalid_argument);
    }

    TEST_CASE("rate is increasing in SINR and continuous toward zero")
    {
        double prev = 0.0;
        for (double s = -60.0; s <= 60.0; s += 0.25)
        {
            const double r = rate_bps(s, 3, 1e9);
            CHECK(r > prev);
            prev = r;
        }
        CHECK(rate_bps(-200.0, 1, 1e9) < 1e-9 * 1e9);
        Rng rng(3);
        for (int k = 0; k < 200; ++k)
        {
            const double s = rng.uniform(-30, 40);
            const int n = 1 + static_cast<int>(rng.index(20));
            CHECK(rate_bps(s, n, 1e9) * n == doctest::Approx(rate_bps(s, 1, 1e9)).epsilon(1e-12));
        }
    }

    TEST_CASE("thermal noise over 1 GHz with 5 dB figure")
    {
        const double n = noise_power_w(ScenarioConfig{});
        const double dbm = 10 * std::log10(n) + 30;
        CHECK(dbm == doctest::Approx(-78.98).epsilon(1e-3));
        CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    }

    TEST_CASE("control SINR equals SNR unless interference is enabled")
    {
        ScenarioConfig cfg;
        CHECK(control_sinr_db(1.0, 1.0, 1.0, cfg) == doctest::Approx(0.0));
        cfg.control_interference = true;
        CHECK(control_sinr_db(1.0, 1.0, 1.0, cfg) == doctest::Approx(-10 * std::log10(2.0)));
    }

    TEST_CASE("threshold filter boundary cases")
    {
        MeasurementTable t(1, 2, 2);
        t.set(0, 0, 0, -5.0);
        t.set(0, 0, 1, -5.0000001);
        t.set(0, 1, 0, 3.0);
        const MeasurementTable f = threshold_filter(t, -5.0);
        CHECK(f.status(0, 0, 0) == Entry::Measured);
        CHECK(f.value(0, 0, 0) == -5.0);
        CHECK(f.status(0, 0, 1) == Entry::BelowThreshold);
        CHECK(f.status(0, 1, 0) == Entry::Measured);
        CHECK(f.status(0, 1, 1) == Entry::Unvisited);
        CHECK_FALSE(f.eligible(0, 1, 1));
        CHECK(f.count(Entry::Measured) == 2);
        CHECK_THROWS_AS(f.status(1, 0, 0), std::out_of_range);
        CHECK_THROWS_AS(f.status(0, 2, 0), std::out_of_range);
        CHECK_THROWS_AS(f.status(0, 0, -1), std::out_of_range);
    }

    TEST_CASE("threshold filter matches an independent predicate on random tables")
    {
        Rng rng(77);
        for (int n = 0; n < 200; ++n)
        {
            const int cells = 3, ni = 16, nj = 8;
            const double gamma = rng.uniform(-10, 5);
            MeasurementTable t(cells, ni, nj);
            std::vector<double> raw(static_cast<std::size_t>(cells * ni * nj));
            std::vector<int> state(raw.size());
            for (int m = 0; m < cells; ++m)
                for (int i = 0; i < ni; ++i)
                    for (int j = 0; j < nj; ++j)
                    {
                        const std::size_t k = static_cast<std::size_t>((m * ni + i) * nj + j);
                        const double u = rng.uniform();
                        if (u < 0.1)
                        {
                            state[k] = 0;
                            continue;
                        }
                        double v = u < 0.15 ? -kInf : rng.uniform(-20, 20);
                        if (u > 0.97)
                            v = gamma;
                        raw[k] = v;
                        state[k] = 1;
                        t.set(m, i, j, v);
                    }
            const MeasurementTable f = threshold_filter(t, gamma);
            for (int m = 0; m < cells; ++m)
                for (int i = 0; i < ni; ++i)
                    for (int j = 0; j < nj; ++j)
                    {
                        const std::size_t k = static_cast<std::size_t>((m * ni + i) * nj + j);
                        const Entry want = state[k] == 0 ? Entry::Unvisited : raw[k] >= gamma ? Entry::Measured : Entry::BelowThreshold;
                        CHECK(f.status(m, i, j) == want);
                        if (want == Entry::Measured)
                            CHECK(f.value(m, i, j) == raw[k]);
                    }
            CHECK(threshold_filter(f, gamma) == f);
        }
    }
}
