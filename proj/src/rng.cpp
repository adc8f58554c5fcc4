// Copyright 2026 The cqwiretap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqwiretap/rng.hpp"

#include <cmath>
#include <numbers>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

} // namespace

std::uint64_t Rng::next() noexcept {
    const std::uint64_t key = mix64(seed_ ^ mix64(stream_ + 0x632be59bd9b4e019ULL));
    return mix64(key ^ mix64(counter_++));
}

double Rng::uniform01() noexcept {
    return static_cast<double>(next() >> 11U) * 0x1.0p-53;
}

double Rng::normal() noexcept {
    double u1 = uniform01();
    while (u1 <= 0.0) {
        u1 = uniform01();
    }
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) {
        throw DomainError("uniform_index: empty range");
    }
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r = next();
    while (r >= limit) {
        r = next();
    }
    return r % n;
}

std::vector<double> Rng::simplex_point(std::size_t k) {
    std::vector<double> p(k);
    double total = 0.0;
    for (auto &v : p) {
        double u = uniform01();
        while (u <= 0.0) {
            u = uniform01();
        }
        v = -std::log(u);
        total += v;
    }
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

Rng Rng::split(std::uint64_t stream) const noexcept {
    return Rng(seed_, mix64(stream_ ^ mix64(stream + 1)));
}

} // namespace cqw
