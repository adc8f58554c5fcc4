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
 * Classical channels, classical-quantum channels and their tensor powers,
 * together with Holevo quantities, common-randomness leakage and the
 * complementary channel pair of an isometry.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cqwiretap/caps.hpp"
#include "cqwiretap/qop.hpp"

namespace cqw {

/// Input strings of X^n, stored as base-|X| integers (first symbol most
/// significant).
using Word = std::uint64_t;

struct SparseEntry {
    std::uint64_t index;
    double prob;
};

/**
 * Stochastic map from inputs {0..rows-1} to outputs {0..num_outputs-1}.
 * Rows are stored sparsely, sorted by output index, zero entries dropped.
 */
class ClassicalChannel {
  public:
    ClassicalChannel() = default;
    ClassicalChannel(std::vector<std::vector<SparseEntry>> rows,
                     std::uint64_t num_outputs);

    /// Dense construction; rows of `m` are input symbols.
    static ClassicalChannel from_dense(const RealMatrix &m);
    static ClassicalChannel identity(std::size_t n);

    [[nodiscard]] std::size_t num_inputs() const noexcept {
        return rows_.size();
    }
    [[nodiscard]] std::uint64_t num_outputs() const noexcept {
        return num_outputs_;
    }
    [[nodiscard]] const std::vector<SparseEntry> &row(std::size_t i) const {
        return rows_.at(i);
    }
    [[nodiscard]] double prob(std::size_t i, std::uint64_t j) const;

  private:
    std::vector<std::vector<SparseEntry>> rows_;
    std::uint64_t num_outputs_ = 0;
};

class CqChannel {
  public:
    CqChannel() = default;
    /// Labels default to "0", "1", ...
    explicit CqChannel(std::vector<DensityOperator> outputs);
    CqChannel(std::vector<std::string> alphabet,
              std::vector<DensityOperator> outputs);

    [[nodiscard]] std::size_t size() const noexcept {
        return outputs_.size();
    }
    [[nodiscard]] Index dim() const noexcept {
        return outputs_.empty() ? 0 : outputs_.front().dim();
    }
    [[nodiscard]] const DensityOperator &output(std::size_t x) const {
        return outputs_.at(x);
    }
    [[nodiscard]] const std::vector<DensityOperator> &outputs() const noexcept {
        return outputs_;
    }
    [[nodiscard]] const std::vector<std::string> &alphabet() const noexcept {
        return alphabet_;
    }
    /// Throws ValidationError for an unknown label.
    [[nodiscard]] std::size_t index_of(const std::string &label) const;

  private:
    std::vector<std::string> alphabet_;
    std::vector<DensityOperator> outputs_;
};

/// V^{(x)n}: outputs are built only for the strings that are queried.
class TensorPowerChannel {
  public:
    TensorPowerChannel() = default;
    /// Throws ResourceError if dim^n exceeds caps.max_dim.
    TensorPowerChannel(CqChannel base, unsigned n, Caps caps = Caps::from_env());

    [[nodiscard]] const CqChannel &base() const noexcept { return base_; }
    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] Index dim() const noexcept { return dim_; }
    /// |X|^n, saturating.
    [[nodiscard]] std::uint64_t num_words() const noexcept { return words_; }

    [[nodiscard]] DensityOperator output(Word w) const;
    [[nodiscard]] DensityOperator output(std::span<const std::size_t> symbols) const;

    /// All |X|^n outputs as an ordinary channel (subject to caps.max_strings).
    [[nodiscard]] CqChannel materialize() const;

  private:
    CqChannel base_;
    unsigned n_ = 0;
    Index dim_ = 0;
    std::uint64_t words_ = 0;
    Caps caps_;
};

[[nodiscard]] TensorPowerChannel tensor_power(const CqChannel &v, unsigned n,
                                              Caps caps = Caps::from_env());

/// Symbols of `w` in X^n, most significant first.
[[nodiscard]] std::vector<std::size_t> word_symbols(Word w, std::size_t alphabet,
                                                    unsigned n);
[[nodiscard]] Word symbols_word(std::span<const std::size_t> symbols,
                                std::size_t alphabet);

/// (EV)(m) = sum_x E(x|m) V(x).
[[nodiscard]] CqChannel compose(const ClassicalChannel &e, const CqChannel &v);
/// (E V^{(x)n})(m), building only the strings in the support of E.
[[nodiscard]] CqChannel compose(const ClassicalChannel &e,
                                const TensorPowerChannel &v);

/// Uniform mixture of the outputs on `subset`.
[[nodiscard]] DensityOperator mix(const CqChannel &v,
                                  std::span<const std::size_t> subset);
/// PV = sum_x P(x) V(x).
[[nodiscard]] DensityOperator average_output(std::span<const double> p,
                                             const CqChannel &v);

/// chi(P;V) = S(PV) - sum_x P(x) S(V(x)).
[[nodiscard]] double holevo(std::span<const double> p, const CqChannel &v);
/// D(rho_{XV} || rho_X (x) PV) on the block-diagonal joint state.
[[nodiscard]] double holevo_relent(std::span<const double> p,
                                   const CqChannel &v);
/// sum_x P(x) D(V(x) || PV).
[[nodiscard]] double holevo_avgrelent(std::span<const double> p,
                                      const CqChannel &v);
/// S(V|P) = sum_x P(x) S(V(x)).
[[nodiscard]] double conditional_entropy(std::span<const double> p,
                                         const CqChannel &v);

/// chi(M; S, E^S V) for a uniform seed: the mean of chi(M; E^s V) over s.
[[nodiscard]] double leakage_cr(std::span<const double> m_dist,
                                std::span<const ClassicalChannel> encoders,
                                const TensorPowerChannel &v_n);
/// Same, with the per-seed composed channels E^s V^{(x)n} given directly.
[[nodiscard]] double leakage_cr(std::span<const double> m_dist,
                                std::span<const CqChannel> composed);

struct OptimizationResult {
    double value = 0.0;
    std::vector<double> argmax;
    bool converged = false;
    int iterations = 0;
};

struct AscentOptions {
    int restarts = 8;
    int max_iters = 20000;
    /// Stop when the objective gains less than `tol` over `window` steps.
    double tol = 1e-10;
    int window = 50;
    std::uint64_t seed = 0;
};

/// max over message distributions of chi(M; S, E^S V), by multiplicative
/// ascent from the uniform point plus random restarts.
[[nodiscard]] OptimizationResult
adversarial_leakage(std::span<const CqChannel> composed,
                    const AscentOptions &opts = {});
[[nodiscard]] OptimizationResult
adversarial_leakage(std::span<const ClassicalChannel> encoders,
                    const TensorPowerChannel &v_n,
                    const AscentOptions &opts = {});

struct CapacityOptions {
    int random_starts = 16;
    int max_iters = 2000;
    double gradient_step = 1e-6;
    /// Simplex grid polish is applied when |X| <= grid_max_alphabet.
    std::size_t grid_max_alphabet = 3;
    std::size_t grid_points = 10000;
    std::uint64_t seed = 0;
};

/// max_P chi(P;W) - chi(P;V).
[[nodiscard]] OptimizationResult
capacity_single_letter(const CqChannel &w, const CqChannel &v,
                       const CapacityOptions &opts = {});

/**
 * (1/n) max_P [chi(P;W^{(x)n}) - chi(P;V^{(x)n})] over distributions on
 * X^n: a lower bound on the wiretap capacity for every n.
 */
[[nodiscard]] OptimizationResult
capacity_lower_bound(const CqChannel &w, const CqChannel &v, unsigned n,
                     const CapacityOptions &opts = {},
                     Caps caps = Caps::from_env());

/**
 * Channels to the two outputs of an isometry U: C^{dP} -> C^{dQ} (x) C^{dE}
 * applied to the outputs of `f`. Returns (W, V) with W(x) = tr_E U F(x) U*
 * and V(x) = tr_Q U F(x) U*.
 */
[[nodiscard]] std::pair<CqChannel, CqChannel>
complementary_pair(const Matrix &isometry, Index dim_q, Index dim_e,
                   const CqChannel &f);

/// Points of the simplex in k coordinates with denominator `res`.
[[nodiscard]] std::vector<std::vector<double>> simplex_grid(std::size_t k,
                                                            std::size_t res);
/// Smallest denominator whose simplex grid has at least `points` points.
[[nodiscard]] std::size_t grid_resolution(std::size_t k, std::size_t points);

} // namespace cqw
