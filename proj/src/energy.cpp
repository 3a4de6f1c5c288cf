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
#include "mmtrack/energy.hpp"

#include <cmath>

namespace mmtrack
{

PowerProfile PowerProfile::from_config(const ScenarioConfig &cfg)
{
    const RfComponents &rf = cfg.rf;
    PowerProfile p;
    p.p_lna = rf.p_lna;
    p.p_ps = rf.p_ps;
    p.p_c = rf.p_c;
    p.p_m = rf.p_m;
    p.p_lo = rf.p_lo;
    p.p_lpf = rf.p_lpf;
    p.p_bbamp = rf.p_bbamp;
    p.adc_step_energy = rf.adc_step_energy;
    p.adc_bits = rf.adc_bits;
    p.n_ant = cfg.ue_array.count();
    p.bandwidth_hz = cfg.bandwidth_hz;
    return p;
}

double p_rf(const PowerProfile &p) { return p.p_m + p.p_lo + p.p_lpf + p.p_bbamp; }

double p_adc(const PowerProfile &p) { return p.adc_step_energy * p.bandwidth_hz * std::ldexp(1.0, p.adc_bits); }

double power_abf(const PowerProfile &p) { return p.n_ant * (p.p_lna + p.p_ps) + p_rf(p) + p.p_c + 2.0 * p_adc(p); }

double power_dbf(const PowerProfile &p) { return p.n_ant * (p.p_lna + p_rf(p) + 2.0 * p_adc(p)); }

double power_w(const PowerProfile &p, BfArch arch) { return arch == BfArch::Abf ? power_abf(p) : power_dbf(p); }

double energy_event(SweepKind kind, const ScenarioConfig &cfg, const PowerProfile &p)
{
    if (kind == SweepKind::Refresh)
        return power_w(p, cfg.bf_arch) * refresh_scan_time(cfg) / refresh_parallelism(cfg);
    return power_w(p, cfg.bf_arch) * refinement_scan_time(cfg) / refinement_parallelism(cfg);
}

double energy_event(SweepKind kind, const ScenarioConfig &cfg) { return energy_event(kind, cfg, PowerProfile::from_config(cfg)); }

void EnergyLedger::record(SweepKind kind, double joules)
{
    if (kind == SweepKind::Refresh)
    {
        ++refresh_count;
        refresh_energy += joules;
    }
    else
    {
        ++refinement_count;
        refinement_energy += joules;
    }
}

EnergyLedger total_energy(Scheme scheme, const ScenarioConfig &cfg, const PowerProfile &p, double sim_time)
{
    EnergyLedger l;
    l.arch = cfg.bf_arch;
    l.refresh_count = floor_ratio(sim_time, cfg.refresh_period_s);
    l.refresh_energy = static_cast<double>(l.refresh_count) * energy_event(SweepKind::Refresh, cfg, p);
    if (scheme == Scheme::B)
    {
        l.refinement_count = floor_ratio(cfg.refresh_period_s, cfg.refinement_period_s) * l.refresh_count;
        l.refinement_energy = static_cast<double>(l.refinement_count) * energy_event(SweepKind::Refinement, cfg, p);
    }
    return l;
}

EnergyLedger total_energy(const ScenarioConfig &cfg)
{
    return total_energy(cfg.scheme, cfg, PowerProfile::from_config(cfg), cfg.sim_time_s);
}

} // namespace mmtrack
