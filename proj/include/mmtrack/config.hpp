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
#ifndef MMTRACK_CONFIG_HPP
#define MMTRACK_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmtrack
{

enum class BfArch
{
    Abf,
    Dbf
};

enum class Scheme
{
    A, // periodic refresh only
    B  // refresh plus local refinements
};

enum class HeadingMode
{
    Axis,  // along the long side of the area
    Random // uniform over the circle
};

enum class SweepKind
{
    Refresh,
    Refinement
};

std::string_view to_string(BfArch arch);
std::string_view to_string(Scheme scheme);
std::string_view to_string(HeadingMode mode);
std::string_view to_string(SweepKind kind);

struct ArraySize
{
    int rows = 1;
    int cols = 1;
    int count() const { return rows * cols; }
    bool operator==(const ArraySize &) const = default;
};

// Three-state distance-dependent pathloss model. Intercepts in dB, slopes
// dimensionless; a_out and a_los in 1/m.
struct PathlossParams
{
    double alpha_los = 61.4;
    double beta_los = 2.0;
    double alpha_nlos = 72.0;
    double beta_nlos = 2.92;
    double a_out = 1.0 / 30.0;
    double b_out = 5.2;
    double a_los = 1.0 / 67.1;
    bool operator==(const PathlossParams &) const = default;
};

// Statistical cluster-model profile. These are profile defaults for a dense
// urban 28 GHz deployment, not measured truths.
struct ChannelProfile
{
    PathlossParams pathloss;
    double cluster_mean = 1.8;                                  // K = max(1, Poisson(cluster_mean))
    int subpaths_per_cluster = 10;
    double cluster_spread_deg = 10.0;                           // rms, both ends
    double delay_power_exponent = 2.8;                          // r_tau
    double cluster_shadowing_db = 4.0;                          // zeta
    double min_distance_m = 1.0;
    bool operator==(const ChannelProfile &) const = default;
};

// Receiver front-end component powers in W; adc_step_energy in J per
// conversion step.
struct RfComponents
{
    double p_lna = 39e-3;
    double p_ps = 19.5e-3;
    double p_c = 19.5e-3;
    double p_m = 16.8e-3;
    double p_lo = 5e-3;
    double p_lpf = 14e-3;
    double p_bbamp = 5e-3;
    double adc_step_energy = 100e-12;
    int adc_bits = 3;
    bool operator==(const RfComponents &) const = default;
};

struct ScenarioConfig
{
    double bandwidth_hz = 1e9;
    double carrier_hz = 28e9;
    double tx_power_dbm = 30.0;
    double sinr_threshold_db = -5.0;
    double noise_figure_db = 5.0;
    ArraySize enb_array{8, 8};
    ArraySize ue_array{4, 4};
    double element_spacing = 0.5; // wavelengths
    int enb_directions = 16;
    int ue_directions = 8;
    double sim_time_s = 10.0;
    double slot_s = 1e-3;
    double ue_speed_mps = 20.0;
    int k_ref = 2;
    double large_scale_period_s = 0.1; // T_H
    double refresh_period_s = 0.6;     // T_PR
    double refinement_period_s = 0.01; // t_ref
    double enb_density_per_km2 = 70.0;
    double ue_per_enb = 10.0;
    double pilot_duration_s = 10e-6; // T_sig
    double pilot_period_s = 200e-6;  // T_per
    double overhead = 0.05;
    double area_x_m = 1000.0;
    double area_y_m = 100.0;
    HeadingMode ue_heading = HeadingMode::Axis;
    BfArch bf_arch = BfArch::Abf;
    Scheme scheme = Scheme::B;
    bool control_interference = false;
    std::uint64_t seed = 1;
    int trials = 50;
    ChannelProfile channel;
    RfComponents rf;

    bool operator==(const ScenarioConfig &) const = default;
};

class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string &message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key))
    {
    }
    const std::string &key() const { return key_; }

private:
    std::string key_;
};

// Parses the flat key-value format (see docs/config.md). Omitted keys keep
// their defaults; unknown keys and malformed values throw ConfigError.
// The result is validated.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path &path);

// Applies a single "key = value" assignment without validating.
void set_config_value(ScenarioConfig &cfg, std::string_view key, std::string_view value);

// Formatted value of a key, as written by serialize_config.
std::string get_config_value(const ScenarioConfig &cfg, std::string_view key);

// Every key in documentation order.
const std::vector<std::string> &config_keys();

// Full-precision dump of every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig &cfg);

// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig &cfg);

// Sweep-parallelism divisors: ABF 1; DBF N_UE for refreshes and
// min(N_UE, k_ref + 1) for refinements.
int refresh_parallelism(const ScenarioConfig &cfg);
int refinement_parallelism(const ScenarioConfig &cfg);

// Sweep durations before and after division by the parallelism divisor.
double refresh_scan_time(const ScenarioConfig &cfg);    // T_per * N_eNB * N_UE
double refinement_scan_time(const ScenarioConfig &cfg); // T_per * N_eNB * (k_ref + 1)
double min_refresh_period(const ScenarioConfig &cfg);
double min_refinement_period(const ScenarioConfig &cfg);

// floor(numerator / denominator), snapping quotients within 1e-9 of an
// integer to that integer so 0.3 / 0.1 counts as 3.
long long floor_ratio(double numerator, double denominator);

} // namespace mmtrack

#endif
