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
#include "mmtrack/config.hpp"

#include "mmtrack/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace mmtrack
{

std::string_view to_string(BfArch arch) { return arch == BfArch::Abf ? "ABF" : "DBF"; }
std::string_view to_string(Scheme scheme) { return scheme == Scheme::A ? "A" : "B"; }
std::string_view to_string(HeadingMode mode) { return mode == HeadingMode::Axis ? "axis" : "random"; }
std::string_view to_string(SweepKind kind) { return kind == SweepKind::Refresh ? "refresh" : "refinement"; }

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_double(std::string_view key, std::string_view v)
{
    double x = 0.0;
    const auto *end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x))
        throw ConfigError(std::string(key), "expected a finite number, got '" + std::string(v) + "'");
    return x;
}

long long parse_integer(std::string_view key, std::string_view v)
{
    long long x = 0;
    const auto *end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
    return x;
}

int parse_int(std::string_view key, std::string_view v)
{
    const long long x = parse_integer(key, v);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(std::string(key), "integer out of range");
    return static_cast<int>(x);
}

std::uint64_t parse_u64(std::string_view key, std::string_view v)
{
    std::uint64_t x = 0;
    const auto *end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(std::string(key), "expected an unsigned integer, got '" + std::string(v) + "'");
    return x;
}

bool parse_bool(std::string_view key, std::string_view v)
{
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on")
        return true;
    if (s == "false" || s == "0" || s == "no" || s == "off")
        return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

ArraySize parse_array(std::string_view key, std::string_view v)
{
    const std::string s = lower(v);
    const auto x = s.find('x');
    if (x == std::string::npos)
        throw ConfigError(std::string(key), "expected ROWSxCOLS, got '" + std::string(v) + "'");
    return {parse_int(key, trim(std::string_view(s).substr(0, x))), parse_int(key, trim(std::string_view(s).substr(x + 1)))};
}

struct KeySpec
{
    std::string name;
    std::function<std::string(const ScenarioConfig &)> get;
    std::function<void(ScenarioConfig &, std::string_view key, std::string_view)> set;
};

template <typename Field>
KeySpec real_key(std::string name, Field field)
{
    return {std::move(name), [field](const ScenarioConfig &c) { return format_double(field(c)); },
            [field](ScenarioConfig &c, std::string_view k, std::string_view v) { field(c) = parse_double(k, v); }};
}

template <typename Field>
KeySpec int_key(std::string name, Field field)
{
    return {std::move(name), [field](const ScenarioConfig &c) { return std::to_string(field(c)); },
            [field](ScenarioConfig &c, std::string_view k, std::string_view v) { field(c) = parse_int(k, v); }};
}

const std::vector<KeySpec> &key_table()
{
    static const std::vector<KeySpec> table = [] {
        std::vector<KeySpec> t;
        t.push_back(real_key("bandwidth_hz", [](auto &c) -> auto & { return c.bandwidth_hz; }));
        t.push_back(real_key("carrier_hz", [](auto &c) -> auto & { return c.carrier_hz; }));
        t.push_back(real_key("tx_power_dbm", [](auto &c) -> auto & { return c.tx_power_dbm; }));
        t.push_back(real_key("sinr_threshold_db", [](auto &c) -> auto & { return c.sinr_threshold_db; }));
        t.push_back(real_key("noise_figure_db", [](auto &c) -> auto & { return c.noise_figure_db; }));
        t.push_back({"enb_array",
                     [](const ScenarioConfig &c) { return std::to_string(c.enb_array.rows) + "x" + std::to_string(c.enb_array.cols); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) { c.enb_array = parse_array(k, v); }});
        t.push_back({"ue_array",
                     [](const ScenarioConfig &c) { return std::to_string(c.ue_array.rows) + "x" + std::to_string(c.ue_array.cols); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) { c.ue_array = parse_array(k, v); }});
        t.push_back(real_key("element_spacing", [](auto &c) -> auto & { return c.element_spacing; }));
        t.push_back(int_key("enb_directions", [](auto &c) -> auto & { return c.enb_directions; }));
        t.push_back(int_key("ue_directions", [](auto &c) -> auto & { return c.ue_directions; }));
        t.push_back(real_key("sim_time_s", [](auto &c) -> auto & { return c.sim_time_s; }));
        t.push_back(real_key("slot_s", [](auto &c) -> auto & { return c.slot_s; }));
        t.push_back(real_key("ue_speed_mps", [](auto &c) -> auto & { return c.ue_speed_mps; }));
        t.push_back(int_key("k_ref", [](auto &c) -> auto & { return c.k_ref; }));
        t.push_back(real_key("large_scale_period_s", [](auto &c) -> auto & { return c.large_scale_period_s; }));
        t.push_back(real_key("refresh_period_s", [](auto &c) -> auto & { return c.refresh_period_s; }));
        t.push_back(real_key("refinement_period_s", [](auto &c) -> auto & { return c.refinement_period_s; }));
        t.push_back(real_key("enb_density_per_km2", [](auto &c) -> auto & { return c.enb_density_per_km2; }));
        t.push_back(real_key("ue_per_enb", [](auto &c) -> auto & { return c.ue_per_enb; }));
        t.push_back(real_key("pilot_duration_s", [](auto &c) -> auto & { return c.pilot_duration_s; }));
        t.push_back(real_key("pilot_period_s", [](auto &c) -> auto & { return c.pilot_period_s; }));
        t.push_back(real_key("overhead", [](auto &c) -> auto & { return c.overhead; }));
        t.push_back(real_key("area_x_m", [](auto &c) -> auto & { return c.area_x_m; }));
        t.push_back(real_key("area_y_m", [](auto &c) -> auto & { return c.area_y_m; }));
        t.push_back({"ue_heading", [](const ScenarioConfig &c) { return std::string(to_string(c.ue_heading)); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) {
                         const std::string s = lower(v);
                         if (s == "axis")
                             c.ue_heading = HeadingMode::Axis;
                         else if (s == "random")
                             c.ue_heading = HeadingMode::Random;
                         else
                             throw ConfigError(std::string(k), "expected axis or random, got '" + std::string(v) + "'");
                     }});
        t.push_back({"bf_arch", [](const ScenarioConfig &c) { return std::string(to_string(c.bf_arch)); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) {
                         const std::string s = lower(v);
                         if (s == "abf")
                             c.bf_arch = BfArch::Abf;
                         else if (s == "dbf")
                             c.bf_arch = BfArch::Dbf;
                         else
                             throw ConfigError(std::string(k), "expected ABF or DBF, got '" + std::string(v) + "'");
                     }});
        t.push_back({"scheme", [](const ScenarioConfig &c) { return std::string(to_string(c.scheme)); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) {
                         const std::string s = lower(v);
                         if (s == "a")
                             c.scheme = Scheme::A;
                         else if (s == "b")
                             c.scheme = Scheme::B;
                         else
                             throw ConfigError(std::string(k), "expected A or B, got '" + std::string(v) + "'");
                     }});
        t.push_back({"control_interference", [](const ScenarioConfig &c) { return std::string(c.control_interference ? "true" : "false"); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) { c.control_interference = parse_bool(k, v); }});
        t.push_back({"seed", [](const ScenarioConfig &c) { return std::to_string(c.seed); },
                     [](ScenarioConfig &c, std::string_view k, std::string_view v) { c.seed = parse_u64(k, v); }});
        t.push_back(int_key("trials", [](auto &c) -> auto & { return c.trials; }));

        t.push_back(real_key("channel.alpha_los", [](auto &c) -> auto & { return c.channel.pathloss.alpha_los; }));
        t.push_back(real_key("channel.beta_los", [](auto &c) -> auto & { return c.channel.pathloss.beta_los; }));
        t.push_back(real_key("channel.alpha_nlos", [](auto &c) -> auto & { return c.channel.pathloss.alpha_nlos; }));
        t.push_back(real_key("channel.beta_nlos", [](auto &c) -> auto & { return c.channel.pathloss.beta_nlos; }));
        t.push_back(real_key("channel.a_out", [](auto &c) -> auto & { return c.channel.pathloss.a_out; }));
        t.push_back(real_key("channel.b_out", [](auto &c) -> auto & { return c.channel.pathloss.b_out; }));
        t.push_back(real_key("channel.a_los", [](auto &c) -> auto & { return c.channel.pathloss.a_los; }));
        t.push_back(real_key("channel.cluster_mean", [](auto &c) -> auto & { return c.channel.cluster_mean; }));
        t.push_back(int_key("channel.subpaths_per_cluster", [](auto &c) -> auto & { return c.channel.subpaths_per_cluster; }));
        t.push_back(real_key("channel.cluster_spread_deg", [](auto &c) -> auto & { return c.channel.cluster_spread_deg; }));
        t.push_back(real_key("channel.delay_power_exponent", [](auto &c) -> auto & { return c.channel.delay_power_exponent; }));
        t.push_back(real_key("channel.cluster_shadowing_db", [](auto &c) -> auto & { return c.channel.cluster_shadowing_db; }));
        t.push_back(real_key("channel.min_distance_m", [](auto &c) -> auto & { return c.channel.min_distance_m; }));

        t.push_back(real_key("power.p_lna_w", [](auto &c) -> auto & { return c.rf.p_lna; }));
        t.push_back(real_key("power.p_ps_w", [](auto &c) -> auto & { return c.rf.p_ps; }));
        t.push_back(real_key("power.p_c_w", [](auto &c) -> auto & { return c.rf.p_c; }));
        t.push_back(real_key("power.p_m_w", [](auto &c) -> auto & { return c.rf.p_m; }));
        t.push_back(real_key("power.p_lo_w", [](auto &c) -> auto & { return c.rf.p_lo; }));
        t.push_back(real_key("power.p_lpf_w", [](auto &c) -> auto & { return c.rf.p_lpf; }));
        t.push_back(real_key("power.p_bbamp_w", [](auto &c) -> auto & { return c.rf.p_bbamp; }));
        t.push_back(real_key("power.adc_step_energy_j", [](auto &c) -> auto & { return c.rf.adc_step_energy; }));
        t.push_back(int_key("power.adc_bits", [](auto &c) -> auto & { return c.rf.adc_bits; }));
        return t;
    }();
    return table;
}

const KeySpec *find_key(std::string_view name)
{
    for (const auto &k : key_table())
        if (k.name == name)
            return &k;
    return nullptr;
}

void require_positive(const std::string &key, double v)
{
    if (!(v > 0.0))
        throw ConfigError(key, "must be > 0 (got " + format_double(v) + ")");
}

void require_nonnegative(const std::string &key, double v)
{
    if (!(v >= 0.0))
        throw ConfigError(key, "must be >= 0 (got " + format_double(v) + ")");
}

} // namespace

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto &k : key_table())
            out.push_back(k.name);
        return out;
    }();
    return keys;
}

void set_config_value(ScenarioConfig &cfg, std::string_view key, std::string_view value)
{
    const KeySpec *spec = find_key(key);
    if (spec == nullptr)
        throw ConfigError(std::string(key), "unknown key");
    value = trim(value);
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
        value = value.substr(1, value.size() - 2);
    spec->set(cfg, key, value);
}

std::string get_config_value(const ScenarioConfig &cfg, std::string_view key)
{
    const KeySpec *spec = find_key(key);
    if (spec == nullptr)
        throw ConfigError(std::string(key), "unknown key");
    return spec->get(cfg);
}

ScenarioConfig parse_config(std::string_view text)
{
    ScenarioConfig cfg;
    std::string section;
    std::size_t line_no = 0;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError("", "line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string_view bare = trim(line.substr(0, eq));
        if (bare.empty())
            throw ConfigError("", "line " + std::to_string(line_no) + ": missing key");
        const std::string key = section.empty() ? std::string(bare) : section + "." + std::string(bare);
        set_config_value(cfg, key, line.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig &cfg)
{
    std::string out;
    for (const auto &k : key_table())
    {
        out += k.name;
        out += " = ";
        out += k.get(cfg);
        out += '\n';
    }
    return out;
}

int refresh_parallelism(const ScenarioConfig &cfg)
{
    return cfg.bf_arch == BfArch::Abf ? 1 : cfg.ue_directions;
}

int refinement_parallelism(const ScenarioConfig &cfg)
{
    return cfg.bf_arch == BfArch::Abf ? 1 : std::min(cfg.ue_directions, cfg.k_ref + 1);
}

double refresh_scan_time(const ScenarioConfig &cfg)
{
    return cfg.pilot_period_s * cfg.enb_directions * cfg.ue_directions;
}

double refinement_scan_time(const ScenarioConfig &cfg)
{
    return cfg.pilot_period_s * cfg.enb_directions * (cfg.k_ref + 1);
}

double min_refresh_period(const ScenarioConfig &cfg)
{
    return refresh_scan_time(cfg) / refresh_parallelism(cfg);
}

double min_refinement_period(const ScenarioConfig &cfg)
{
    return refinement_scan_time(cfg) / refinement_parallelism(cfg);
}

long long floor_ratio(double numerator, double denominator)
{
    const double q = numerator / denominator;
    const double r = std::round(q);
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)))
        return static_cast<long long>(r);
    return static_cast<long long>(std::floor(q));
}

void validate(const ScenarioConfig &c)
{
    require_positive("bandwidth_hz", c.bandwidth_hz);
    require_positive("carrier_hz", c.carrier_hz);
    require_positive("element_spacing", c.element_spacing);
    if (c.enb_array.rows < 1 || c.enb_array.cols < 1)
        throw ConfigError("enb_array", "rows and cols must be >= 1");
    if (c.ue_array.rows < 1 || c.ue_array.cols < 1)
        throw ConfigError("ue_array", "rows and cols must be >= 1");
    if (c.enb_directions < 1)
        throw ConfigError("enb_directions", "must be >= 1");
    if (c.ue_directions < 1)
        throw ConfigError("ue_directions", "must be >= 1");
    require_positive("sim_time_s", c.sim_time_s);
    require_positive("slot_s", c.slot_s);
    if (c.slot_s > c.sim_time_s)
        throw ConfigError("slot_s", "must not exceed sim_time_s");
    require_nonnegative("ue_speed_mps", c.ue_speed_mps);
    if (c.k_ref < 0)
        throw ConfigError("k_ref", "must be >= 0");
    if (c.k_ref % 2 != 0)
        throw ConfigError("k_ref", "k_ref must be even (got " + std::to_string(c.k_ref) + ")");
    require_positive("large_scale_period_s", c.large_scale_period_s);
    require_positive("refresh_period_s", c.refresh_period_s);
    require_positive("refinement_period_s", c.refinement_period_s);
    require_positive("enb_density_per_km2", c.enb_density_per_km2);
    require_nonnegative("ue_per_enb", c.ue_per_enb);
    require_positive("pilot_duration_s", c.pilot_duration_s);
    require_positive("pilot_period_s", c.pilot_period_s);
    require_positive("overhead", c.overhead);
    if (c.pilot_duration_s > c.pilot_period_s)
        throw ConfigError("pilot_duration_s", "must not exceed pilot_period_s");
    if (std::abs(c.pilot_duration_s / c.pilot_period_s - c.overhead) > 1e-12)
        throw ConfigError("overhead", "pilot_duration_s / pilot_period_s = " + format_double(c.pilot_duration_s / c.pilot_period_s) +
                                          " does not match overhead " + format_double(c.overhead));
    require_positive("area_x_m", c.area_x_m);
    require_positive("area_y_m", c.area_y_m);
    if (c.trials < 1)
        throw ConfigError("trials", "must be >= 1");

    const double min_pr = min_refresh_period(c);
    if (c.refresh_period_s < min_pr * (1.0 - 1e-12))
        throw ConfigError("refresh_period_s", "T_PR = " + format_double(c.refresh_period_s) +
                                                  " s is below the Minimum refresh period T_per*N_eNB*N_UE/L = " + format_double(min_pr) + " s");
    if (c.scheme == Scheme::B)
    {
        const double min_ref = min_refinement_period(c);
        if (c.refinement_period_s < min_ref * (1.0 - 1e-12))
            throw ConfigError("refinement_period_s", "t_ref = " + format_double(c.refinement_period_s) +
                                                         " s is below the Minimum refinement period T_per*N_eNB*(k_ref+1)/L = " +
                                                         format_double(min_ref) + " s");
    }

    const auto &pl = c.channel.pathloss;
    require_positive("channel.beta_los", pl.beta_los);
    require_positive("channel.beta_nlos", pl.beta_nlos);
    require_nonnegative("channel.a_out", pl.a_out);
    require_nonnegative("channel.a_los", pl.a_los);
    require_nonnegative("channel.cluster_mean", c.channel.cluster_mean);
    if (c.channel.subpaths_per_cluster < 1)
        throw ConfigError("channel.subpaths_per_cluster", "must be >= 1");
    require_nonnegative("channel.cluster_spread_deg", c.channel.cluster_spread_deg);
    require_positive("channel.delay_power_exponent", c.channel.delay_power_exponent);
    require_nonnegative("channel.cluster_shadowing_db", c.channel.cluster_shadowing_db);
    require_positive("channel.min_distance_m", c.channel.min_distance_m);

    require_nonnegative("power.p_lna_w", c.rf.p_lna);
    require_nonnegative("power.p_ps_w", c.rf.p_ps);
    require_nonnegative("power.p_c_w", c.rf.p_c);
    require_nonnegative("power.p_m_w", c.rf.p_m);
    require_nonnegative("power.p_lo_w", c.rf.p_lo);
    require_nonnegative("power.p_lpf_w", c.rf.p_lpf);
    require_nonnegative("power.p_bbamp_w", c.rf.p_bbamp);
    require_nonnegative("power.adc_step_energy_j", c.rf.adc_step_energy);
    if (c.rf.adc_bits < 1)
        throw ConfigError("power.adc_bits", "must be >= 1");
}

} // namespace mmtrack
