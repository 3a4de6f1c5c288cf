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
#include "mmtrack/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mmtrack
{

std::size_t Rng::index(std::size_t n)
{
    // Reject the biased tail so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return static_cast<std::size_t>(x % n);
}

double Rng::normal()
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> Rng::complex_normal(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

std::uint64_t Rng::poisson(double mean)
{
    if (!(mean > 0.0))
        return 0;
    // Knuth's product method is exact; split large means into chunks so that
    // exp(-chunk) stays far from underflow (sum of Poissons is Poisson).
    constexpr double chunk = 200.0;
    std::uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0)
    {
        const double lambda = remaining > chunk ? chunk : remaining;
        remaining -= lambda;
        const double limit = std::exp(-lambda);
        double p = uniform();
        std::uint64_t k = 0;
        while (p > limit)
        {
            ++k;
            p *= uniform();
        }
        total += k;
    }
    return total;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t h = mix64(master);
    for (std::uint64_t p : path)
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

} // namespace mmtrack
