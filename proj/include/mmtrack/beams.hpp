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
#ifndef MMTRACK_BEAMS_HPP
#define MMTRACK_BEAMS_HPP

#include "mmtrack/config.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mmtrack
{

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Uniform planar array lying in the horizontal plane. Element (r, c) sits at
// spacing * ((c - (cols-1)/2) * u + (r - (rows-1)/2) * v) wavelengths, where
// u points along `orientation` and v is u rotated by +90 degrees. Elements
// are stored row-major (index r * cols + c).
struct ArrayGeometry
{
    int rows = 1;
    int cols = 1;
    double spacing = 0.5;     // wavelengths
    double orientation = 0.0; // rad, azimuth of the column axis

    int size() const { return rows * cols; }
};

// Array for an n_dir-beam codebook: the column axis is turned by half a
// codebook step so that beam directions bisect the array's symmetry axes.
ArrayGeometry make_array(ArraySize size, double spacing, int n_dir);

// Unit-norm response to a plane wave from `azimuth` at `elevation` above the
// array plane. Elevation pi/2 is broadside (all entries 1/sqrt(N)); the
// simulator works in the elevation-0 slice.
CVector steering_vector(const ArrayGeometry &geom, double azimuth, double elevation = 0.0);

// a(beam)^H a(path) at elevation 0, evaluated in closed form as a product of
// two Dirichlet kernels. The centred element layout makes it real.
double array_projection(const ArrayGeometry &geom, double beam_azimuth, double path_azimuth);

struct Codebook
{
    std::vector<double> directions; // azimuth, rad, uniform over [0, 2 pi)
    std::vector<CVector> vectors;

    int size() const { return static_cast<int>(directions.size()); }
};

Codebook build_codebook(const ArrayGeometry &geom, int n_dir);

// |w_rx^H H w_tx|^2. Throws std::invalid_argument on dimension mismatch.
double bf_gain(const CMatrix &h, const CVector &w_tx, const CVector &w_rx);

} // namespace mmtrack

#endif
