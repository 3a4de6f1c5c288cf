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
#include "mmtrack/scenario.hpp"

#include "json.hpp"

#include <limits>
#include <numbers>
#include <stdexcept>

namespace mmtrack
{

Deployment deploy(const ScenarioConfig &cfg, Rng &rng)
{
    Deployment dep;
    const double area_km2 = cfg.area_x_m * cfg.area_y_m * 1e-6;
    const double mean_enbs = cfg.enb_density_per_km2 * area_km2;

    std::uint64_t n_enb = rng.poisson(mean_enbs);
    while (n_enb == 0)
    {
        ++dep.enb_redraws;
        n_enb = rng.poisson(mean_enbs);
    }
    dep.enb_positions.reserve(n_enb);
    for (std::uint64_t i = 0; i < n_enb; ++i)
    {
        const double x = rng.uniform(0.0, cfg.area_x_m);
        const double y = rng.uniform(0.0, cfg.area_y_m);
        dep.enb_positions.push_back({x, y});
    }

    const std::uint64_t n_background = rng.poisson(cfg.ue_per_enb * static_cast<double>(n_enb));
    dep.ue_positions.reserve(n_background + 1);

    if (cfg.ue_heading == HeadingMode::Axis)
    {
        dep.ue_positions.push_back({0.0, 0.5 * cfg.area_y_m});
        dep.test_ue_heading = {1.0, 0.0};
    }
    else
    {
        const double x = rng.uniform(0.0, cfg.area_x_m);
        const double y = rng.uniform(0.0, cfg.area_y_m);
        const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
        dep.ue_positions.push_back({x, y});
        dep.test_ue_heading = {std::cos(heading), std::sin(heading)};
    }
    dep.test_ue_index = 0;

    for (std::uint64_t i = 0; i < n_background; ++i)
    {
        const double x = rng.uniform(0.0, cfg.area_x_m);
        const double y = rng.uniform(0.0, cfg.area_y_m);
        dep.ue_positions.push_back({x, y});
    }
    return dep;
}

Deployment advance_ue(Deployment dep, double speed, double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("advance_ue: dt must be > 0");
    Vec2 &ue = dep.ue_positions[dep.test_ue_index];
    ue = ue + dep.test_ue_heading * (speed * dt);
    return dep;
}

std::vector<int> background_load(const Deployment &dep)
{
    std::vector<int> load(dep.enb_positions.size(), 0);
    for (std::size_t u = 0; u < dep.ue_positions.size(); ++u)
    {
        if (u == dep.test_ue_index)
            continue;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < dep.enb_positions.size(); ++m)
        {
            const double d = (dep.ue_positions[u] - dep.enb_positions[m]).norm();
            if (d < best_d)
            {
                best_d = d;
                best = m;
            }
        }
        if (!dep.enb_positions.empty())
            ++load[best];
    }
    return load;
}

std::string to_json(const Deployment &dep)
{
    nlohmann::ordered_json j;
    auto points = [](const std::vector<Vec2> &v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &p : v)
            arr.push_back({p.x, p.y});
        return arr;
    };
    j["enb_positions"] = points(dep.enb_positions);
    j["ue_positions"] = points(dep.ue_positions);
    j["test_ue_index"] = dep.test_ue_index;
    j["test_ue_heading"] = {dep.test_ue_heading.x, dep.test_ue_heading.y};
    j["enb_redraws"] = dep.enb_redraws;
    return j.dump();
}

std::uint64_t digest(const Deployment &dep)
{
    // FNV-1a over the JSON form.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(dep))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace mmtrack
