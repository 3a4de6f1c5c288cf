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
#ifndef MMTRACK_ENERGY_HPP
#define MMTRACK_ENERGY_HPP

#include "mmtrack/config.hpp"

namespace mmtrack
{

// Receiver front-end parameters at the UE.
struct PowerProfile
{
    double p_lna = 0.0;
    double p_ps = 0.0;
    double p_c = 0.0;
    double p_m = 0.0;
    double p_lo = 0.0;
    double p_lpf = 0.0;
    double p_bbamp = 0.0;
    double adc_step_energy = 0.0; // J per conversion step
    int adc_bits = 1;
    int n_ant = 1;
    double bandwidth_hz = 0.0;

    static PowerProfile from_config(const ScenarioConfig &cfg);
};

double p_rf(const PowerProfile &p);  // P_M + P_LO + P_LPF + P_BBamp
double p_adc(const PowerProfile &p); // c W 2^b
// N (P_LNA + P_PS) + P_RF + P_C + 2 P_ADC
double power_abf(const PowerProfile &p);
// N (P_LNA + P_RF + 2 P_ADC)
double power_dbf(const PowerProfile &p);
double power_w(const PowerProfile &p, BfArch arch);

// P_C(arch) * scan time / L, with the scan time of the event's sweep.
double energy_event(SweepKind kind, const ScenarioConfig &cfg, const PowerProfile &p);
double energy_event(SweepKind kind, const ScenarioConfig &cfg);

struct EnergyLedger
{
    BfArch arch = BfArch::Abf;
    double refresh_energy = 0.0;
    double refinement_energy = 0.0;
    long long refresh_count = 0;
    long long refinement_count = 0;

    double total() const { return refresh_energy + refinement_energy; }
    void record(SweepKind kind, double joules);

    bool operator==(const EnergyLedger &) const = default;
};

// Closed form over a run of length sim_time:
//   N_refresh = floor(T_sim / T_PR), N_ref = floor(T_PR / t_ref) per interval,
//   E_A = N_refresh E_refresh, E_B = E_A + N_refresh N_ref E_refinement.
EnergyLedger total_energy(Scheme scheme, const ScenarioConfig &cfg, const PowerProfile &p, double sim_time);
EnergyLedger total_energy(const ScenarioConfig &cfg);

} // namespace mmtrack

#endif
