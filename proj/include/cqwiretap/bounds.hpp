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
 * Numeric certification of the leakage inequalities: Pinsker, message
 * expurgation with the mutual-information continuity bound, and the chain
 * that bounds the leakage of a BRI function through a subnormalized channel
 * and the second singular value of its section matrices.
 *
 * Every check returns a BoundReport. All quantities are in bits.
 */

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cqwiretap/bri.hpp"
#include "cqwiretap/codes.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"

namespace cqw {

struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs - lhs; +inf when rhs is infinite.
    double slack = 0.0;
    bool holds = false;
};

/// Report for lhs <= rhs with tolerance tol::bound.
[[nodiscard]] BoundReport make_report(std::string name, double lhs, double rhs);

/// True iff every report holds.
[[nodiscard]] bool all_hold(std::span<const BoundReport> reports);

/**
 * Map x -> V'(x) >= 0 with 1 - epsilon <= tr V'(x) <= 1. When constructed
 * with epsilon = 0 but some trace falls below 1 - 1e-12, epsilon is
 * recomputed as max_x (1 - tr V'(x)).
 */
class SubnormalizedCqChannel {
  public:
    SubnormalizedCqChannel() = default;
    SubnormalizedCqChannel(std::vector<HermitianOperator> outputs,
                           double epsilon = 0.0);

    /// V' = V, epsilon = 0.
    static SubnormalizedCqChannel from_channel(const CqChannel &v);
    /// V' = (1 - epsilon) V.
    static SubnormalizedCqChannel scaled(const CqChannel &v, double epsilon);

    [[nodiscard]] std::size_t size() const noexcept { return outputs_.size(); }
    [[nodiscard]] Index dim() const noexcept {
        return outputs_.empty() ? 0 : outputs_.front().dim();
    }
    [[nodiscard]] const HermitianOperator &output(std::size_t x) const {
        return outputs_.at(x);
    }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

    /// Smallest eigenvalue of V(x) - V'(x) over x.
    [[nodiscard]] double ordering_slack(const CqChannel &v) const;
    [[nodiscard]] bool leq(const CqChannel &v) const;

    /// Outputs on a subset of the alphabet, epsilon re-measured.
    [[nodiscard]] SubnormalizedCqChannel
    restrict(std::span<const std::size_t> inputs) const;

  private:
    std::vector<HermitianOperator> outputs_;
    double epsilon_ = 0.0;
};

/// ||sigma - tau||_1^2 <= 2 ln2 D(sigma || tau).
[[nodiscard]] BoundReport pinsker_gap(const HermitianOperator &sigma,
                                      const HermitianOperator &mu_tensor_rho);

/// g(e) = (1 + e) h(e / (1 + e)).
[[nodiscard]] double continuity_g(double eps);

/// 2 eps log2(d) + g(eps).
[[nodiscard]] double continuity_rhs(double eps, std::size_t d);

/**
 * chi(P; {rho_m}) <= 2 eps' log2 d + g(eps') with
 * eps' = (1/2) || sum_m P_m |m><m| (x) (rho_m - rho) ||_1 and d = #messages.
 */
[[nodiscard]] BoundReport continuity_bound(std::span<const double> p,
                                           const CqChannel &states,
                                           const HermitianOperator &rho);

struct ExpurgationResult {
    WiretapCode code;
    /// Kept message indices of the original code, increasing.
    std::vector<std::size_t> kept;
    /// ||rho_m - rho||_1 for every original message.
    std::vector<double> distances;
    double average_distance = 0.0;
    double threshold = 0.0;
    double max_kept_distance = 0.0;
    /// max kept distance <= 2 x average distance.
    BoundReport report;
};

/**
 * Keeps every message whose wiretap output is within twice the average
 * trace distance of the mean output. At least ceil(|M|/2) messages survive.
 */
[[nodiscard]] ExpurgationResult expurgate_semantic(const WiretapCode &code,
                                                   const CqChannel &v,
                                                   Caps caps = Caps::from_env());

/// chi(M; S, V o f_S^{-1}) <= max_m E_S D(V o f_S^{-1}(m) || V(X)).
/// `m_dist` is indexed like f.regularity().
[[nodiscard]] BoundReport bound_divasmi(const BriFunction &f, const CqChannel &v,
                                        std::span<const double> m_dist);

/// E_S D(V o f^{-1}(m) || V(X)) <= E_S D(V' o f^{-1}(m) || V'(X))
///   + eps log2(|X| / d_S). Throws PreconditionError unless V' <= V.
[[nodiscard]] BoundReport bound_subnorm(const BriFunction &f, const CqChannel &v,
                                        const SubnormalizedCqChannel &v_prime,
                                        std::size_t m);

/// E_S D(V' o f^{-1}(m) || V'(X)) <= log2 E_S 2^{D_2(...)} + eps.
[[nodiscard]] BoundReport bound_renyi(const BriFunction &f,
                                      const SubnormalizedCqChannel &v_prime,
                                      std::size_t m);

/**
 * Same left side against log2 E_S 2^{D_2(...)} + kappa(eps) with
 * kappa(eps) = -(1 + eps) log2(1 - eps). This constant covers subnormalized
 * arguments, where the plain +eps can fail.
 */
[[nodiscard]] BoundReport bound_renyi_subnormalized(
    const BriFunction &f, const SubnormalizedCqChannel &v_prime, std::size_t m);

[[nodiscard]] double renyi_correction(double eps);

/// E_S 2^{D_2(V' o f^{-1}(m) || V'(X))}
///   <= lambda2(f,m) rank[V'(X)] max_x ||V'(x)||_inf + 1.
[[nodiscard]] BoundReport bound_exp_d2(const BriFunction &f,
                                       const SubnormalizedCqChannel &v_prime,
                                       std::size_t m);

/// chi(M; S, V o f_S^{-1}) <= (1/ln2) max_m lambda2 rank norm
///   + eps + eps log2(|X|/d_S).
[[nodiscard]] BoundReport bound_corollary(const BriFunction &f,
                                          const CqChannel &v,
                                          const SubnormalizedCqChannel &v_prime,
                                          std::span<const double> m_dist);

/**
 * The five reports in chain order: divergence maximum, subnormalization,
 * Renyi-2 step and spectral step (at the output m maximizing
 * E_S D(V o f^{-1}(m) || V(X))), then the combined leakage bound.
 */
[[nodiscard]] std::vector<BoundReport>
certify_chain(const BriFunction &f, const CqChannel &v,
              const SubnormalizedCqChannel &v_prime,
              std::span<const double> m_dist);

/// <w|P|w> <= lambda2 <w|w> + |<w|1>|^2 with |1> the normalized all-ones.
[[nodiscard]] BoundReport quadratic_form_bound(const RealMatrix &p,
                                               double lambda2,
                                               const ComplexVector &omega);

/// Per-seed channels m -> V o f_s^{-1}(m) over the regular outputs.
[[nodiscard]] std::vector<CqChannel> preimage_channels(const BriFunction &f,
                                                       const CqChannel &v);

/// E_S D(V o f_S^{-1}(m) || V(X)).
[[nodiscard]] double mean_preimage_divergence(const BriFunction &f,
                                              const CqChannel &v, std::size_t m);

} // namespace cqw
