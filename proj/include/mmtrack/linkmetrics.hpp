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
#ifndef MMTRACK_LINKMETRICS_HPP
#define MMTRACK_LINKMETRICS_HPP

#include "mmtrack/config.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mmtrack
{

inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kNoiseTemperature = 290.0;

double db_to_linear(double db);
double dbm_to_watts(double dbm);

// k T0 W scaled by the noise figure.
double noise_power_w(double bandwidth_hz, double noise_figure_db);
double noise_power_w(const ScenarioConfig &cfg);

struct LinkBudget
{
    double p_tx_lin = 0.0;     // W
    double pathloss_lin = 0.0; // >= 1; +inf in outage
    double gain = 0.0;
    double noise = 0.0; // W

    double received_w() const;
};

// Received power P_TX / PL * G; zero for an infinite pathloss.
double received_power_w(double p_tx_w, double pathloss_db, double gain);

// S / (I + N) in dB. Zero signal gives -inf.
double sinr_db(double signal_w, double interference_w, double noise_w);
double sinr_db(const LinkBudget &serving, const std::vector<LinkBudget> &interferers);

// Pilot SINR: interference is counted only when cfg.control_interference is
// set, otherwise this is the SNR.
double control_sinr_db(double signal_w, double interference_w, double noise_w, const ScenarioConfig &cfg);

// (W / n_users) log2(1 + SINR); 0 for -inf dB. Throws std::invalid_argument
// when n_users < 1.
double rate_bps(double sinr_db, int n_users, double bandwidth_hz);

enum class Entry : unsigned char
{
    Unvisited,
    Measured,
    BelowThreshold
};

// SINR grid indexed by (cell m, eNB direction i, UE direction j).
class MeasurementTable
{
public:
    MeasurementTable() = default;
    MeasurementTable(int cells, int enb_dirs, int ue_dirs);

    int cells() const { return cells_; }
    int enb_dirs() const { return enb_dirs_; }
    int ue_dirs() const { return ue_dirs_; }
    std::size_t size() const { return values_.size(); }

    void set(int m, int i, int j, double sinr_db);
    void mark_below(int m, int i, int j);
    Entry status(int m, int i, int j) const { return status_[index(m, i, j)]; }
    // The stored SINR. Only meaningful for Measured entries.
    double value(int m, int i, int j) const { return values_[index(m, i, j)]; }
    bool eligible(int m, int i, int j) const { return status(m, i, j) == Entry::Measured; }
    std::size_t count(Entry e) const;

    bool operator==(const MeasurementTable &) const = default;

private:
    std::size_t index(int m, int i, int j) const;

    int cells_ = 0;
    int enb_dirs_ = 0;
    int ue_dirs_ = 0;
    std::vector<double> values_;
    std::vector<Entry> status_;
};

// Measured entries with SINR < gamma become BelowThreshold. Equality is kept.
MeasurementTable threshold_filter(MeasurementTable table, double gamma_db);

} // namespace mmtrack

#endif
