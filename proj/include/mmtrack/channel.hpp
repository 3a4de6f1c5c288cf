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
#ifndef MMTRACK_CHANNEL_HPP
#define MMTRACK_CHANNEL_HPP

#include "mmtrack/beams.hpp"
#include "mmtrack/config.hpp"
#include "mmtrack/random.hpp"
#include "mmtrack/scenario.hpp"

#include <complex>
#include <limits>
#include <string_view>
#include <vector>

namespace mmtrack
{

inline constexpr double kSpeedOfLight = 299792458.0;

enum class LinkState
{
    LoS,
    NLoS,
    Outage
};

std::string_view to_string(LinkState state);

struct StateProbabilities
{
    double outage = 0.0;
    double los = 0.0;
    double nlos = 0.0;
};

// p_out = max(0, 1 - exp(-a_out d + b_out)), p_los = (1 - p_out) exp(-a_los d),
// p_nlos = 1 - p_out - p_los.
StateProbabilities state_probabilities(double distance, const PathlossParams &params);

LinkState draw_state(double distance, const PathlossParams &params, Rng &rng);

// alpha + beta * 10 log10(d) for the given state. Throws std::invalid_argument
// for Outage or d <= 0.
double pathloss_db(double distance, LinkState state, const PathlossParams &params);

struct Subpath
{
    std::complex<double> gain;
    double aod_offset = 0.0; // rad, relative to the cluster centre
    double aoa_offset = 0.0;
    double doppler_phase = 0.0; // accumulated rad, not wrapped
};

struct Cluster
{
    double power_fraction = 0.0;
    double aod_center = 0.0; // absolute azimuth at the eNB, rad
    double aoa_center = 0.0; // absolute azimuth at the UE, rad
    double aod_spread = 0.0; // rms, rad
    double aoa_spread = 0.0;
    std::vector<Subpath> subpaths;
};

using ClusterSet = std::vector<Cluster>;

struct LinkGeometry
{
    Vec2 enb;
    Vec2 ue;
};

// One (eNB, UE) link. Clusters are drawn for every state, outage included, so
// that random-stream consumption does not depend on the state; outage links
// are treated as zero channels everywhere downstream.
struct ChannelState
{
    LinkState state = LinkState::Outage;
    LinkGeometry geometry;
    double distance = 0.0;
    double pathloss_db = std::numeric_limits<double>::infinity();
    ClusterSet clusters;
    double age_since_large_scale = 0.0;

    bool outage() const { return state == LinkState::Outage; }
    std::size_t subpath_count() const;
};

// Redraws every statistical parameter of the link: state, pathloss, cluster
// count, power fractions, angles, spreads and subpaths.
ChannelState regenerate_large_scale(const LinkGeometry &geometry, const ScenarioConfig &cfg, Rng &rng);

// Per-slot evolution: Doppler phases advance by 2 pi (v / lambda) cos(psi) dt
// using the arrival angles at the start of the step, cluster centres at both
// ends rotate with the UE's bearing, and distance / pathloss follow the new
// geometry while the LoS/NLoS/outage state is held. Throws
// std::invalid_argument when dt <= 0.
ChannelState update_small_scale(ChannelState ch, const LinkGeometry &geometry, Vec2 ue_velocity, double dt, double carrier_hz,
                                const ChannelProfile &profile);

// H = sqrt(n_rx n_tx) sum_kl g_kl e^{j phi_kl} a_rx(aoa_kl) a_tx(aod_kl)^H, or
// the zero matrix in outage. Shape (ue.size(), enb.size()).
CMatrix channel_matrix(const ChannelState &ch, const ArrayGeometry &ue, const ArrayGeometry &enb);

// Beamforming gains of one link in one slot, evaluated per subpath:
//   G(i, j) = n_rx n_tx |sum_l c_l P_ue(j, l) P_enb(i, l)|^2
// where P are array projections onto codebook beams. Equal to
// bf_gain(channel_matrix(...), enb_cb.vectors[i], ue_cb.vectors[j]) without
// forming H. Projections are computed lazily per beam and cached until the
// next reset().
class LinkResponse
{
public:
    LinkResponse(const ArrayGeometry &ue, const Codebook &ue_cb, const ArrayGeometry &enb, const Codebook &enb_cb);

    void reset(const ChannelState &ch);
    bool outage() const { return outage_; }
    double gain(int enb_dir, int ue_dir);

private:
    const std::vector<double> &ue_projection(int j);
    const std::vector<double> &enb_projection(int i);

    ArrayGeometry ue_;
    ArrayGeometry enb_;
    std::vector<double> ue_beam_x_, ue_beam_y_, enb_beam_x_, enb_beam_y_;
    bool outage_ = true;
    std::vector<std::complex<double>> coeff_;
    std::vector<double> aoa_x_, aoa_y_, aod_x_, aod_y_;
    std::vector<std::vector<double>> ue_proj_, enb_proj_;
    std::vector<char> ue_ready_, enb_ready_;
};

} // namespace mmtrack

#endif
