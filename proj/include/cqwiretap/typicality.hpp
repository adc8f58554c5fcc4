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
 * Typical sequences, typical and conditional typical projectors, their
 * finite-n eigenvalue and rank properties, and the subnormalized channel
 * obtained by sandwiching tensor-power outputs between typical projectors.
 *
 * A string x^n over an alphabet of size k is delta-typical for P when
 * |N(a|x^n)/n - P(a)| <= delta/k for every a and N(a|x^n) = 0 whenever
 * P(a) = 0.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cqwiretap/bounds.hpp"
#include "cqwiretap/caps.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"

namespace cqw {

/// Membership test on a symbol string.
[[nodiscard]] bool is_typical(std::span<const std::size_t> symbols,
                              std::span<const double> p, double delta);

/// Membership test on symbol counts N(a|x^n).
[[nodiscard]] bool is_typical_counts(std::span<const std::size_t> counts,
                                     std::span<const double> p, double delta);

struct TypicalSet {
    std::vector<double> p;
    unsigned n = 0;
    double delta = 0.0;
    /// Members in increasing Word order.
    std::vector<Word> members;
};

/// Enumerates T^n_{P,delta}; ResourceError when |X|^n > caps.max_strings.
[[nodiscard]] TypicalSet typical_set(std::span<const double> p, unsigned n,
                                     double delta, Caps caps = Caps::from_env());

/**
 * Eigendecomposition with eigenvalues in descending order. Within a
 * degenerate eigenspace the basis is the Gram-Schmidt orthonormalization of
 * the projected standard basis vectors, each with its first nonzero
 * component made real and positive. Eigenvalues below the support
 * threshold are set to 0.
 */
[[nodiscard]] Spectrum canonical_eigenbasis(const HermitianOperator &rho);

struct TypicalProjector {
    unsigned n = 0;
    double delta = 0.0;
    /// Spectrum of rho in the canonical basis, descending.
    std::vector<double> eigenvalues;
    Matrix basis;
    MeasurementOperator projector;
    std::size_t rank = 0;
};

[[nodiscard]] TypicalProjector typical_projector(const DensityOperator &rho,
                                                 unsigned n, double delta,
                                                 Caps caps = Caps::from_env());

struct ConditionalTypicalProjector {
    std::vector<std::size_t> word;
    double delta = 0.0;
    MeasurementOperator projector;
    std::size_t rank = 0;
};

/// Tensor product over symbols a of the typical projector of V(a) on the
/// positions where x^n equals a.
[[nodiscard]] ConditionalTypicalProjector
cond_typical_projector(const CqChannel &v, std::span<const std::size_t> word,
                       double delta, Caps caps = Caps::from_env());

/// delta * max over positive p(a) of |log2 p(a)|.
[[nodiscard]] double typical_gamma(std::span<const double> p, double delta);

/**
 * Constant for the conditional eigenvalue sandwich at every P-typical x^n:
 * delta max_{a,j: V(j|a) > 0} |log2 V(j|a)| + (delta/|X|) sum_a S(V(a)),
 * where a runs over the symbols with P(a) > 0. The second term accounts
 * for the type of x^n differing from P.
 */
[[nodiscard]] double conditional_gamma(const CqChannel &v,
                                       std::span<const double> p, double delta);

struct TypicalityReport {
    unsigned n = 0;
    double delta = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    /// tr(rho^{(x)n} Pi), or the minimum over typical x^n in the channel case.
    double weight = 0.0;
    /// Minimum of tr(V^{(x)n}(x^n) Pi_{PV}) over typical x^n (channel case).
    double weight_average_projector = 0.0;
    std::size_t rank = 0;
    /// Inequalities that hold at every n: eigenvalue sandwiches and the
    /// upper rank bounds, stated in log2 form.
    std::vector<BoundReport> exact;
    /// Inequalities that only hold for large n (lower rank bounds).
    std::vector<BoundReport> asymptotic;
};

[[nodiscard]] TypicalityReport check_te_properties(const DensityOperator &rho,
                                                   unsigned n, double delta);
[[nodiscard]] TypicalityReport check_te_properties(std::span<const double> p,
                                                   const CqChannel &v,
                                                   unsigned n, double delta,
                                                   Caps caps = Caps::from_env());

struct SubnormalizedChannelResult {
    std::vector<Word> strings;
    /// V^{(x)n} restricted to the typical strings.
    CqChannel original;
    /// Pi_PV Pi_V(x^n) V^{(x)n}(x^n) Pi_V(x^n) Pi_PV.
    SubnormalizedCqChannel projected;
    /// Smallest eigenvalue of V^{(x)n}(x^n) - V'(x^n) over x^n.
    double ordering_slack = 0.0;
};

[[nodiscard]] SubnormalizedChannelResult
subnormalized_channel(const CqChannel &v, std::span<const double> p, unsigned n,
                      double delta, Caps caps = Caps::from_env());

/**
 * Factors of the rank-norm bound for the projected channel: norm and rank
 * bounds separately and their product
 * rank[V'(T)] max ||V'(x^n)|| <= 2^{n(chi(P;V) + beta + gamma')}, in log2.
 */
[[nodiscard]] std::vector<BoundReport>
rank_norm_reports(const SubnormalizedChannelResult &r, const CqChannel &v,
                  std::span<const double> p, unsigned n, double delta);

} // namespace cqw
