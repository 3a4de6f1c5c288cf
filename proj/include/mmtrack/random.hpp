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
#ifndef MMTRACK_RANDOM_HPP
#define MMTRACK_RANDOM_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmtrack
{

// Random stream used by every stochastic operation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The distributions are implemented here rather than taken from
// <random>, because the standard leaves their algorithms unspecified and
// results would differ between standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [0, n). n must be > 0.
    std::size_t index(std::size_t n);

    // Standard normal via Box-Muller (one variate per call).
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance);

    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Child seed for a labelled sub-stream, e.g. derive_seed(master, {trial, 2}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

} // namespace mmtrack

#endif
