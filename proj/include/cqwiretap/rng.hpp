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

/**
 * @file
 * Counter-based pseudo-random generator. Every draw is a pure function of
 * (seed, stream, counter), so results do not depend on the platform's
 * standard library and independent restarts can use disjoint streams.
 */

#pragma once

#include <cstdint>
#include <vector>

namespace cqw {

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream) {}

    /// Next raw 64-bit output.
    std::uint64_t next() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept;

    /// Standard normal via Box-Muller.
    double normal() noexcept;

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Uniform point of the probability simplex (flat Dirichlet).
    std::vector<double> simplex_point(std::size_t k);

    /// Independent generator sharing the seed, keyed by `stream`.
    [[nodiscard]] Rng split(std::uint64_t stream) const noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

} // namespace cqw
