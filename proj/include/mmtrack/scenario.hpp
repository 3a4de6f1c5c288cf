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
#ifndef MMTRACK_SCENARIO_HPP
#define MMTRACK_SCENARIO_HPP

#include "mmtrack/config.hpp"
#include "mmtrack/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mmtrack
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
    double bearing() const { return std::atan2(y, x); }
    bool operator==(const Vec2 &) const = default;
};

// Node placement for one trial. The test UE lives at
// ue_positions[test_ue_index]; every other UE is static background load.
struct Deployment
{
    std::vector<Vec2> enb_positions;
    std::vector<Vec2> ue_positions;
    std::size_t test_ue_index = 0;
    Vec2 test_ue_heading{1.0, 0.0};
    int enb_redraws = 0; // Poisson draws of zero eNBs that were redrawn

    const Vec2 &test_ue() const { return ue_positions[test_ue_index]; }
    bool operator==(const Deployment &) const = default;
};

// PPP deployment over the configured rectangle. The eNB count is
// Poisson(density * area), redrawn while zero; background UE count is
// Poisson(ue_per_enb * eNB count). The test UE starts at the middle of the
// short edge (x = 0) heading along +x, or with a uniform heading when
// ue_heading = random.
Deployment deploy(const ScenarioConfig &cfg, Rng &rng);

// Moves the test UE by speed * dt along its heading. Throws
// std::invalid_argument when dt <= 0.
Deployment advance_ue(Deployment dep, double speed, double dt);

// Background UEs attached to each eNB (nearest eNB, i.e. strongest mean
// received power under a common distance law). The test UE is not counted.
std::vector<int> background_load(const Deployment &dep);

std::string to_json(const Deployment &dep);
std::uint64_t digest(const Deployment &dep);

} // namespace mmtrack

#endif
