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
#include "mmtrack/linkmetrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmtrack
{

double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }

double dbm_to_watts(double dbm) { return std::pow(10.0, 0.1 * (dbm - 30.0)); }

double noise_power_w(double bandwidth_hz, double noise_figure_db)
{
    return kBoltzmann * kNoiseTemperature * bandwidth_hz * db_to_linear(noise_figure_db);
}

double noise_power_w(const ScenarioConfig &cfg) { return noise_power_w(cfg.bandwidth_hz, cfg.noise_figure_db); }

double LinkBudget::received_w() const
{
    if (!std::isfinite(pathloss_lin))
        return 0.0;
    return p_tx_lin / pathloss_lin * gain;
}

double received_power_w(double p_tx_w, double pathloss_db, double gain)
{
    if (!std::isfinite(pathloss_db))
        return 0.0;
    return p_tx_w * std::pow(10.0, -0.1 * pathloss_db) * gain;
}

double sinr_db(double signal_w, double interference_w, double noise_w)
{
    if (!(signal_w > 0.0))
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_w / (interference_w + noise_w));
}

double sinr_db(const LinkBudget &serving, const std::vector<LinkBudget> &interferers)
{
    double interference = 0.0;
    for (const auto &b : interferers)
        interference += b.received_w();
    return sinr_db(serving.received_w(), interference, serving.noise);
}

double control_sinr_db(double signal_w, double interference_w, double noise_w, const ScenarioConfig &cfg)
{
    return sinr_db(signal_w, cfg.control_interference ? interference_w : 0.0, noise_w);
}

double rate_bps(double sinr, int n_users, double bandwidth_hz)
{
    if (n_users < 1)
        throw std::invalid_argument("rate_bps: n_users must be >= 1");
    if (std::isinf(sinr) && sinr < 0.0)
        return 0.0;
    return bandwidth_hz / n_users * std::log2(1.0 + std::pow(10.0, 0.1 * sinr));
}

MeasurementTable::MeasurementTable(int cells, int enb_dirs, int ue_dirs)
    : cells_(cells), enb_dirs_(enb_dirs), ue_dirs_(ue_dirs)
{
    const std::size_t n = static_cast<std::size_t>(cells) * enb_dirs * ue_dirs;
    values_.assign(n, -std::numeric_limits<double>::infinity());
    status_.assign(n, Entry::Unvisited);
}

std::size_t MeasurementTable::index(int m, int i, int j) const
{
    if (m < 0 || m >= cells_ || i < 0 || i >= enb_dirs_ || j < 0 || j >= ue_dirs_)
        throw std::out_of_range("MeasurementTable: index out of range");
    return (static_cast<std::size_t>(m) * enb_dirs_ + i) * ue_dirs_ + j;
}

void MeasurementTable::set(int m, int i, int j, double sinr)
{
    const std::size_t k = index(m, i, j);
    values_[k] = sinr;
    status_[k] = Entry::Measured;
}

void MeasurementTable::mark_below(int m, int i, int j)
{
    const std::size_t k = index(m, i, j);
    values_[k] = -std::numeric_limits<double>::infinity();
    status_[k] = Entry::BelowThreshold;
}

std::size_t MeasurementTable::count(Entry e) const
{
    std::size_t n = 0;
    for (Entry s : status_)
        n += s == e;
    return n;
}

MeasurementTable threshold_filter(MeasurementTable table, double gamma_db)
{
    for (int m = 0; m < table.cells(); ++m)
        for (int i = 0; i < table.enb_dirs(); ++i)
            for (int j = 0; j < table.ue_dirs(); ++j)
                if (table.eligible(m, i, j) && !(table.value(m, i, j) >= gamma_db))
                    table.mark_below(m, i, j);
    return table;
}

} // namespace mmtrack
