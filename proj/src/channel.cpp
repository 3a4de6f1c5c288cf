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
#include "mmtrack/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmtrack
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pi(double a)
{
    a = std::fmod(a + std::numbers::pi, kTwoPi);
    if (a < 0.0)
        a += kTwoPi;
    return a - std::numbers::pi;
}

double sinc_kernel(int n, double x)
{
    const double half = 0.5 * x;
    const double den = std::sin(half);
    if (std::abs(den) > 1e-9)
        return std::sin(n * half) / den;
    const double centre = 0.5 * (n - 1);
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += std::cos(x * (k - centre));
    return sum;
}

} // namespace

std::string_view to_string(LinkState state)
{
    switch (state)
    {
    case LinkState::LoS:
        return "LoS";
    case LinkState::NLoS:
        return "NLoS";
    case LinkState::Outage:
        return "Outage";
    }
    return "?";
}

StateProbabilities state_probabilities(double distance, const PathlossParams &p)
{
    StateProbabilities out;
    out.outage = std::max(0.0, 1.0 - std::exp(-p.a_out * distance + p.b_out));
    out.los = (1.0 - out.outage) * std::exp(-p.a_los * distance);
    out.nlos = std::max(0.0, 1.0 - out.outage - out.los);
    return out;
}

LinkState draw_state(double distance, const PathlossParams &params, Rng &rng)
{
    const StateProbabilities p = state_probabilities(distance, params);
    const double u = rng.uniform();
    if (u < p.outage)
        return LinkState::Outage;
    if (u < p.outage + p.los)
        return LinkState::LoS;
    return LinkState::NLoS;
}

double pathloss_db(double distance, LinkState state, const PathlossParams &p)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("pathloss_db: distance must be > 0");
    switch (state)
    {
    case LinkState::LoS:
        return p.alpha_los + p.beta_los * 10.0 * std::log10(distance);
    case LinkState::NLoS:
        return p.alpha_nlos + p.beta_nlos * 10.0 * std::log10(distance);
    case LinkState::Outage:
        break;
    }
    throw std::invalid_argument("pathloss_db: outage has no finite pathloss");
}

std::size_t ChannelState::subpath_count() const
{
    std::size_t n = 0;
    for (const auto &c : clusters)
        n += c.subpaths.size();
    return n;
}

ChannelState regenerate_large_scale(const LinkGeometry &geometry, const ScenarioConfig &cfg, Rng &rng)
{
    const ChannelProfile &prof = cfg.channel;
    ChannelState ch;
    ch.geometry = geometry;
    const Vec2 los = geometry.ue - geometry.enb;
    ch.distance = std::max(los.norm(), prof.min_distance_m);
    ch.state = draw_state(ch.distance, prof.pathloss, rng);
    ch.pathloss_db = ch.outage() ? std::numeric_limits<double>::infinity() : pathloss_db(ch.distance, ch.state, prof.pathloss);
    ch.age_since_large_scale = 0.0;

    const int k = std::max<int>(1, static_cast<int>(rng.poisson(prof.cluster_mean)));

    std::vector<double> fractions(k);
    double total = 0.0;
    for (double &f : fractions)
    {
        const double u = 1.0 - rng.uniform(); // (0, 1]
        const double z = rng.normal(0.0, prof.cluster_shadowing_db);
        f = std::pow(u, prof.delay_power_exponent - 1.0) * std::pow(10.0, -0.1 * z);
        total += f;
    }
    for (double &f : fractions)
        f /= total;
    // Strongest cluster first; in LoS it carries the direct path.
    std::sort(fractions.begin(), fractions.end(), std::greater<>());

    const double los_aod = los.bearing();
    const double los_aoa = wrap_pi(los_aod + std::numbers::pi);
    const double spread = prof.cluster_spread_deg * std::numbers::pi / 180.0;
    const int n_sub = prof.subpaths_per_cluster;

    ch.clusters.resize(k);
    for (int c = 0; c < k; ++c)
    {
        Cluster &cl = ch.clusters[c];
        cl.power_fraction = fractions[c];
        if (c == 0 && ch.state == LinkState::LoS)
        {
            cl.aod_center = los_aod;
            cl.aoa_center = los_aoa;
        }
        else
        {
            cl.aod_center = rng.uniform(-std::numbers::pi, std::numbers::pi);
            cl.aoa_center = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
        cl.aod_spread = spread;
        cl.aoa_spread = spread;
        cl.subpaths.resize(n_sub);
        for (Subpath &sp : cl.subpaths)
        {
            sp.aod_offset = rng.normal(0.0, spread);
            sp.aoa_offset = rng.normal(0.0, spread);
            sp.gain = rng.complex_normal(cl.power_fraction / n_sub);
            sp.doppler_phase = 0.0;
        }
    }
    return ch;
}

ChannelState update_small_scale(ChannelState ch, const LinkGeometry &geometry, Vec2 ue_velocity, double dt, double carrier_hz,
                                const ChannelProfile &profile)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("update_small_scale: dt must be > 0");

    const double wavelength = kSpeedOfLight / carrier_hz;
    const double k = kTwoPi * dt / wavelength;
    if (ue_velocity.x != 0.0 || ue_velocity.y != 0.0)
    {
        for (Cluster &cl : ch.clusters)
        {
            for (Subpath &sp : cl.subpaths)
            {
                const double aoa = cl.aoa_center + sp.aoa_offset;
                // |v| cos(psi) = v . u(aoa)
                sp.doppler_phase += k * (ue_velocity.x * std::cos(aoa) + ue_velocity.y * std::sin(aoa));
            }
        }
    }

    const Vec2 before = ch.geometry.ue - ch.geometry.enb;
    const Vec2 after = geometry.ue - geometry.enb;
    const double rotation = wrap_pi(after.bearing() - before.bearing());
    if (rotation != 0.0)
    {
        for (Cluster &cl : ch.clusters)
        {
            cl.aod_center += rotation;
            cl.aoa_center += rotation;
        }
    }

    ch.geometry = geometry;
    ch.distance = std::max(after.norm(), profile.min_distance_m);
    if (!ch.outage())
        ch.pathloss_db = pathloss_db(ch.distance, ch.state, profile.pathloss);
    ch.age_since_large_scale += dt;
    return ch;
}

CMatrix channel_matrix(const ChannelState &ch, const ArrayGeometry &ue, const ArrayGeometry &enb)
{
    CMatrix h = CMatrix::Zero(ue.size(), enb.size());
    if (ch.outage())
        return h;
    const double scale = std::sqrt(static_cast<double>(ue.size()) * enb.size());
    for (const Cluster &cl : ch.clusters)
    {
        for (const Subpath &sp : cl.subpaths)
        {
            const CVector a_rx = steering_vector(ue, cl.aoa_center + sp.aoa_offset);
            const CVector a_tx = steering_vector(enb, cl.aod_center + sp.aod_offset);
            const std::complex<double> c = scale * sp.gain * std::polar(1.0, sp.doppler_phase);
            h.noalias() += (c * a_rx) * a_tx.adjoint();
        }
    }
    return h;
}

LinkResponse::LinkResponse(const ArrayGeometry &ue, const Codebook &ue_cb, const ArrayGeometry &enb, const Codebook &enb_cb)
    : ue_(ue), enb_(enb)
{
    for (double az : ue_cb.directions)
    {
        ue_beam_x_.push_back(std::cos(az - ue.orientation));
        ue_beam_y_.push_back(std::sin(az - ue.orientation));
    }
    for (double az : enb_cb.directions)
    {
        enb_beam_x_.push_back(std::cos(az - enb.orientation));
        enb_beam_y_.push_back(std::sin(az - enb.orientation));
    }
    ue_proj_.resize(ue_cb.directions.size());
    enb_proj_.resize(enb_cb.directions.size());
    ue_ready_.assign(ue_cb.directions.size(), 0);
    enb_ready_.assign(enb_cb.directions.size(), 0);
}

void LinkResponse::reset(const ChannelState &ch)
{
    std::fill(ue_ready_.begin(), ue_ready_.end(), 0);
    std::fill(enb_ready_.begin(), enb_ready_.end(), 0);
    outage_ = ch.outage();
    coeff_.clear();
    aoa_x_.clear();
    aoa_y_.clear();
    aod_x_.clear();
    aod_y_.clear();
    if (outage_)
        return;
    const double scale = std::sqrt(static_cast<double>(ue_.size()) * enb_.size());
    for (const Cluster &cl : ch.clusters)
    {
        for (const Subpath &sp : cl.subpaths)
        {
            coeff_.push_back(scale * sp.gain * std::polar(1.0, sp.doppler_phase));
            const double aoa = cl.aoa_center + sp.aoa_offset - ue_.orientation;
            const double aod = cl.aod_center + sp.aod_offset - enb_.orientation;
            aoa_x_.push_back(std::cos(aoa));
            aoa_y_.push_back(std::sin(aoa));
            aod_x_.push_back(std::cos(aod));
            aod_y_.push_back(std::sin(aod));
        }
    }
}

const std::vector<double> &LinkResponse::ue_projection(int j)
{
    auto &p = ue_proj_[j];
    if (!ue_ready_[j])
    {
        const double k = kTwoPi * ue_.spacing;
        const double norm = 1.0 / ue_.size();
        p.resize(coeff_.size());
        for (std::size_t l = 0; l < coeff_.size(); ++l)
            p[l] = sinc_kernel(ue_.cols, k * (aoa_x_[l] - ue_beam_x_[j])) * sinc_kernel(ue_.rows, k * (aoa_y_[l] - ue_beam_y_[j])) * norm;
        ue_ready_[j] = 1;
    }
    return p;
}

const std::vector<double> &LinkResponse::enb_projection(int i)
{
    auto &p = enb_proj_[i];
    if (!enb_ready_[i])
    {
        const double k = kTwoPi * enb_.spacing;
        const double norm = 1.0 / enb_.size();
        p.resize(coeff_.size());
        for (std::size_t l = 0; l < coeff_.size(); ++l)
            p[l] = sinc_kernel(enb_.cols, k * (aod_x_[l] - enb_beam_x_[i])) * sinc_kernel(enb_.rows, k * (aod_y_[l] - enb_beam_y_[i])) *
                   norm;
        enb_ready_[i] = 1;
    }
    return p;
}

double LinkResponse::gain(int enb_dir, int ue_dir)
{
    if (outage_)
        return 0.0;
    const auto &pu = ue_projection(ue_dir);
    const auto &pe = enb_projection(enb_dir);
    std::complex<double> y = 0.0;
    for (std::size_t l = 0; l < coeff_.size(); ++l)
        y += coeff_[l] * (pu[l] * pe[l]);
    return std::norm(y);
}

} // namespace mmtrack
