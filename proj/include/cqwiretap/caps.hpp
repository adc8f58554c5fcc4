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
 * Size caps for operator dimensions, string enumeration and exhaustive
 * search. The environment variable CQWIRETAP_CAP overrides the operator
 * dimension cap.
 */

#pragma once

#include <cstdint>

namespace cqw {

struct Caps {
    /// Largest Hilbert-space dimension materialized as a dense matrix.
    std::uint64_t max_dim = 4096;
    /// Largest number of strings enumerated over X^n.
    std::uint64_t max_strings = 1'000'000;
    /// Largest number of candidate tables visited by exhaustive search.
    std::uint64_t max_candidates = 10'000'000;

    /// Defaults, with max_dim taken from CQWIRETAP_CAP when set.
    static Caps from_env();
};

/// base^exp, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t saturating_pow(std::uint64_t base, unsigned exp);

} // namespace cqw
