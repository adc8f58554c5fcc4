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
 * Biregular irreducible (BRI) functions f: S x X -> N, their section
 * matrices P_{f,m} and second singular values, uniform preimage sampling,
 * and two constructors that only return certified functions.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqwiretap/caps.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"
#include "cqwiretap/rng.hpp"

namespace cqw {

/// Seed-by-input table of output indices, row-major.
struct BriTable {
    std::size_t num_seeds = 0;
    std::size_t num_inputs = 0;
    std::size_t num_outputs = 0;
    std::vector<std::size_t> values;

    [[nodiscard]] std::size_t at(std::size_t s, std::size_t x) const {
        return values.at(s * num_inputs + x);
    }
};

struct BiregularityReport {
    bool ok = false;
    std::size_t d_s = 0;
    std::size_t d_x = 0;
    /// On failure: the violating output and either a seed or an input.
    std::size_t m = 0;
    std::optional<std::size_t> seed;
    std::optional<std::size_t> input;
    std::size_t count = 0;
    std::size_t expected = 0;
    std::string message;
};

/**
 * Checks that |{x : f_s(x) = m}| is the same nonzero d_S for every s and
 * m in `regularity`, and |{s : f_s(x) = m}| the same nonzero d_X for every
 * x and m. The expected count is the most common nonzero count; the first
 * (m, s) or else (m, x) that differs from it is reported.
 */
[[nodiscard]] BiregularityReport
verify_biregular(const BriTable &table, const std::vector<std::size_t> &regularity);

/// A table that passed verify_biregular.
class BriFunction {
  public:
    /// Throws ValidationError carrying the failure report message.
    BriFunction(BriTable table, std::vector<std::size_t> regularity);

    [[nodiscard]] const BriTable &table() const noexcept { return table_; }
    [[nodiscard]] std::size_t num_seeds() const noexcept {
        return table_.num_seeds;
    }
    [[nodiscard]] std::size_t num_inputs() const noexcept {
        return table_.num_inputs;
    }
    [[nodiscard]] std::size_t num_outputs() const noexcept {
        return table_.num_outputs;
    }
    [[nodiscard]] const std::vector<std::size_t> &regularity() const noexcept {
        return regularity_;
    }
    [[nodiscard]] std::size_t d_s() const noexcept { return d_s_; }
    [[nodiscard]] std::size_t d_x() const noexcept { return d_x_; }
    [[nodiscard]] std::size_t operator()(std::size_t s, std::size_t x) const {
        return table_.at(s, x);
    }
    [[nodiscard]] bool is_regular(std::size_t m) const;

    /// f_s^{-1}(m) in increasing order.
    [[nodiscard]] std::vector<std::size_t> preimage(std::size_t s,
                                                    std::size_t m) const;

  private:
    BriTable table_;
    std::vector<std::size_t> regularity_;
    std::size_t d_s_ = 0;
    std::size_t d_x_ = 0;
};

struct SectionMatrix {
    std::size_t m = 0;
    RealMatrix matrix;
    double lambda2 = 0.0;
};

/// Gap below which the top two singular values count as tied.
inline constexpr double kLambda2Tie = 1e-10;

/// P_{f,m}(x,x') = |{s : f_s(x) = f_s(x') = m}| / (d_S d_X).
[[nodiscard]] SectionMatrix section_matrix(const BriFunction &f, std::size_t m);

/// Second largest singular value; 1 when it ties with the largest.
[[nodiscard]] double lambda2(const RealMatrix &p);
[[nodiscard]] double lambda2(const BriFunction &f, std::size_t m);
[[nodiscard]] double max_lambda2(const BriFunction &f);

/// Biregular with lambda2 < 1 for every regular output.
[[nodiscard]] bool is_irreducible(const BriFunction &f);

/// Uniform draw from f_s^{-1}(m).
[[nodiscard]] std::size_t sample_preimage(const BriFunction &f, std::size_t s,
                                          std::size_t m, Rng &rng);

/// (1/|S|) sum_s V(f_s^{-1}(m)).
[[nodiscard]] DensityOperator seed_average(const BriFunction &f,
                                           const CqChannel &v, std::size_t m);

/**
 * Searches tables with N = M = {0..num_outputs-1} for a biregular function
 * with max_m lambda2 <= target. Rows are enumerated in nondecreasing
 * lexicographic order after fixing the first row to the sorted block
 * partition. Returns nullopt when the space is exhausted and throws
 * ResourceError when caps.max_candidates is reached.
 */
[[nodiscard]] std::optional<BriFunction>
construct_exhaustive(std::size_t num_seeds, std::size_t num_inputs,
                     std::size_t num_outputs, double lambda2_target,
                     Caps caps = Caps::from_env());

/**
 * Shifted block partition on Z_L, L = 2^k d: f_s(x) = floor(((x+s) mod L)/d).
 * Returned only if it is biregular with max_m lambda2 <= 4/d; otherwise
 * throws ConstructionUnverifiedError with the measured max lambda2.
 */
[[nodiscard]] BriFunction construct_seeded(unsigned k, std::size_t d,
                                           Caps caps = Caps::from_env());

} // namespace cqw
