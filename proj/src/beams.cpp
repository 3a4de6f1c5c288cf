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
#include "mmtrack/beams.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmtrack
{

namespace
{

// sum_{k=0}^{n-1} cos(x * (k - (n-1)/2)), i.e. sin(n x / 2) / sin(x / 2).
double dirichlet(int n, double x)
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

ArrayGeometry make_array(ArraySize size, double spacing, int n_dir)
{
    return {size.rows, size.cols, spacing, std::numbers::pi / n_dir};
}

CVector steering_vector(const ArrayGeometry &geom, double azimuth, double elevation)
{
    const int n = geom.size();
    CVector v(n);
    const double k = 2.0 * std::numbers::pi * geom.spacing * std::cos(elevation);
    const double ux = std::cos(azimuth - geom.orientation);
    const double uy = std::sin(azimuth - geom.orientation);
    const double rc = 0.5 * (geom.rows - 1);
    const double cc = 0.5 * (geom.cols - 1);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int r = 0; r < geom.rows; ++r)
    {
        for (int c = 0; c < geom.cols; ++c)
        {
            const double phase = k * ((c - cc) * ux + (r - rc) * uy);
            v(r * geom.cols + c) = std::polar(amp, phase);
        }
    }
    return v;
}

double array_projection(const ArrayGeometry &geom, double beam_azimuth, double path_azimuth)
{
    const double k = 2.0 * std::numbers::pi * geom.spacing;
    const double dx = std::cos(path_azimuth - geom.orientation) - std::cos(beam_azimuth - geom.orientation);
    const double dy = std::sin(path_azimuth - geom.orientation) - std::sin(beam_azimuth - geom.orientation);
    return dirichlet(geom.cols, k * dx) * dirichlet(geom.rows, k * dy) / geom.size();
}

Codebook build_codebook(const ArrayGeometry &geom, int n_dir)
{
    if (n_dir < 1)
        throw std::invalid_argument("build_codebook: n_dir must be >= 1");
    Codebook cb;
    cb.directions.reserve(n_dir);
    cb.vectors.reserve(n_dir);
    for (int i = 0; i < n_dir; ++i)
    {
        const double az = 2.0 * std::numbers::pi * i / n_dir;
        cb.directions.push_back(az);
        cb.vectors.push_back(steering_vector(geom, az));
    }
    return cb;
}

double bf_gain(const CMatrix &h, const CVector &w_tx, const CVector &w_rx)
{
    if (w_rx.size() != h.rows() || w_tx.size() != h.cols())
        throw std::invalid_argument("bf_gain: beam lengths do not match channel dimensions");
    const std::complex<double> y = w_rx.dot(h * w_tx); // dot() conjugates w_rx
    return std::norm(y);
}

} // namespace mmtrack
