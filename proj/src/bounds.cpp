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

#include "cqwiretap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_alphabet(const BriFunction &f, std::size_t size, const char *what) {
    if (size != f.num_inputs()) {
        std::ostringstream os;
        os << what << ": channel has " << size << " inputs but the function "
           << "has " << f.num_inputs();
        throw DimensionError(os.str());
    }
}

void require_regular(const BriFunction &f, std::size_t m, const char *what) {
    if (!f.is_regular(m)) {
        throw DomainError(std::string(what) +
                          ": output outside the regularity set");
    }
}

HermitianOperator sum_over(const SubnormalizedCqChannel &v,
                           std::span<const std::size_t> inputs, double scale) {
    Matrix acc = Matrix::Zero(v.dim(), v.dim());
    for (std::size_t x : inputs) {
        acc += v.output(x).matrix();
    }
    return HermitianOperator::assume_hermitian(scale * acc);
}

/// V'(X), the uniform average of all outputs.
HermitianOperator full_mixture(const SubnormalizedCqChannel &v) {
    std::vector<std::size_t> all(v.size());
    for (std::size_t x = 0; x < all.size(); ++x) {
        all[x] = x;
    }
    return sum_over(v, all, 1.0 / static_cast<double>(v.size()));
}

/// V' o f_s^{-1}(m) = (1/d_S) sum over the preimage.
HermitianOperator preimage_mixture(const BriFunction &f,
                                   const SubnormalizedCqChannel &v,
                                   std::size_t s, std::size_t m) {
    return sum_over(v, f.preimage(s, m), 1.0 / static_cast<double>(f.d_s()));
}

double mean_divergence(const BriFunction &f, const SubnormalizedCqChannel &v,
                       std::size_t m) {
    const HermitianOperator ref = full_mixture(v);
    double total = 0.0;
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        total += relative_entropy(preimage_mixture(f, v, s, m), ref);
    }
    return total / static_cast<double>(f.num_seeds());
}

double mean_exp_d2(const BriFunction &f, const SubnormalizedCqChannel &v,
                   std::size_t m) {
    const HermitianOperator ref = full_mixture(v);
    double total = 0.0;
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        total += exp2_renyi2(preimage_mixture(f, v, s, m), ref);
    }
    return total / static_cast<double>(f.num_seeds());
}

/// rank[V'(X)] max_x ||V'(x)||_inf
double rank_norm(const SubnormalizedCqChannel &v) {
    double norm = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        norm = std::max(norm, operator_norm(v.output(x)));
    }
    return static_cast<double>(rank_eps(full_mixture(v))) * norm;
}

double subnorm_penalty(const BriFunction &f, double eps) {
    return eps * std::log2(static_cast<double>(f.num_inputs()) /
                           static_cast<double>(f.d_s()));
}

} // namespace

BoundReport make_report(std::string name, double lhs, double rhs) {
    BoundReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    if (std::isinf(rhs) && rhs > 0) {
        r.slack = kInfinity;
        r.holds = true;
    } else {
        r.slack = rhs - lhs;
        r.holds = r.slack >= -tol::bound;
    }
    return r;
}

bool all_hold(std::span<const BoundReport> reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const BoundReport &r) { return r.holds; });
}

SubnormalizedCqChannel::SubnormalizedCqChannel(
    std::vector<HermitianOperator> outputs, double epsilon)
    : outputs_(std::move(outputs)), epsilon_(epsilon) {
    if (outputs_.empty()) {
        throw ValidationError("subnormalized channel has no inputs");
    }
    if (!(epsilon >= 0.0) || epsilon > 1.0) {
        throw DomainError("subnormalized channel: epsilon outside [0, 1]");
    }
    double measured = 0.0;
    for (std::size_t x = 0; x < outputs_.size(); ++x) {
        const auto &o = outputs_[x];
        if (o.dim() != outputs_.front().dim()) {
            throw DimensionError("subnormalized channel outputs differ in "
                                 "dimension");
        }
        if (min_eigenvalue(o) < -tol::negative_eigenvalue) {
            throw InvalidStateError("subnormalized channel output is not "
                                    "positive semidefinite");
        }
        const double tr = o.trace();
        if (tr > 1.0 + tol::trace) {
            std::ostringstream os;
            os << "subnormalized channel output " << x << " has trace " << tr
               << " > 1";
            throw InvalidStateError(os.str());
        }
        measured = std::max(measured, 1.0 - tr);
    }
    if (measured > epsilon_ + 1e-12) {
        if (epsilon_ != 0.0) {
            std::ostringstream os;
            os << "subnormalized channel: declared epsilon " << epsilon_
               << " is below the measured trace deficit " << measured;
            throw ValidationError(os.str());
        }
        epsilon_ = measured;
    }
}

SubnormalizedCqChannel SubnormalizedCqChannel::from_channel(const CqChannel &v) {
    std::vector<HermitianOperator> outs;
    for (const auto &o : v.outputs()) {
        outs.push_back(o.op());
    }
    return {std::move(outs), 0.0};
}

SubnormalizedCqChannel SubnormalizedCqChannel::scaled(const CqChannel &v,
                                                      double epsilon) {
    std::vector<HermitianOperator> outs;
    for (const auto &o : v.outputs()) {
        outs.push_back((1.0 - epsilon) * o.op());
    }
    return {std::move(outs), epsilon};
}

double SubnormalizedCqChannel::ordering_slack(const CqChannel &v) const {
    if (v.size() != size() || v.dim() != dim()) {
        throw DimensionError("ordering check: channels differ in shape");
    }
    double slack = kInfinity;
    for (std::size_t x = 0; x < size(); ++x) {
        slack = std::min(slack, min_eigenvalue(v.output(x).op() - outputs_[x]));
    }
    return slack;
}

bool SubnormalizedCqChannel::leq(const CqChannel &v) const {
    return ordering_slack(v) >= -tol::negative_eigenvalue;
}

SubnormalizedCqChannel
SubnormalizedCqChannel::restrict(std::span<const std::size_t> inputs) const {
    std::vector<HermitianOperator> outs;
    for (std::size_t x : inputs) {
        outs.push_back(output(x));
    }
    return {std::move(outs), 0.0};
}

BoundReport pinsker_gap(const HermitianOperator &sigma,
                        const HermitianOperator &mu_tensor_rho) {
    const double dist = trace_norm(sigma - mu_tensor_rho);
    const double d = relative_entropy(sigma, mu_tensor_rho);
    return make_report("pinsker", dist * dist, 2.0 * kLn2 * d);
}

double continuity_g(double eps) {
    if (eps < 0.0) {
        throw DomainError("continuity_g: negative argument");
    }
    if (eps == 0.0) {
        return 0.0;
    }
    return (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

double continuity_rhs(double eps, std::size_t d) {
    return 2.0 * eps * std::log2(static_cast<double>(d)) + continuity_g(eps);
}

BoundReport continuity_bound(std::span<const double> p, const CqChannel &states,
                             const HermitianOperator &rho) {
    if (rho.dim() != states.dim()) {
        throw DimensionError("continuity_bound: reference state dimension");
    }
    double eps = 0.0;
    for (std::size_t m = 0; m < states.size(); ++m) {
        if (p[m] > 0.0) {
            eps += p[m] * trace_norm(states.output(m).op() - rho);
        }
    }
    eps *= 0.5;
    return make_report("continuity", holevo(p, states),
                       continuity_rhs(eps, states.size()));
}

ExpurgationResult expurgate_semantic(const WiretapCode &code,
                                     const CqChannel &v, Caps caps) {
    const CqChannel outs = eavesdropper_channel(code, v, caps);
    const std::size_t nm = outs.size();
    ExpurgationResult r;
    if (nm == 1) {
        r.code = code;
        r.kept = {0};
        r.distances = {0.0};
        r.report = make_report("expurgation", 0.0, 0.0);
        return r;
    }
    std::vector<double> uniform(nm, 1.0 / static_cast<double>(nm));
    const DensityOperator rho = average_output(uniform, outs);
    double total = 0.0;
    for (std::size_t m = 0; m < nm; ++m) {
        r.distances.push_back(trace_norm(outs.output(m).op() - rho.op()));
        total += r.distances.back();
    }
    r.average_distance = total / static_cast<double>(nm);
    r.threshold = 2.0 * r.average_distance;
    for (std::size_t m = 0; m < nm; ++m) {
        if (r.distances[m] <= r.threshold) {
            r.kept.push_back(m);
            r.max_kept_distance = std::max(r.max_kept_distance, r.distances[m]);
        }
    }
    if (2 * r.kept.size() < nm) {
        throw ValidationError("expurgation kept fewer than half the messages");
    }
    r.code = restrict_messages(code, r.kept);
    r.report = make_report("expurgation", r.max_kept_distance, r.threshold);
    return r;
}

std::vector<CqChannel> preimage_channels(const BriFunction &f,
                                         const CqChannel &v) {
    require_alphabet(f, v.size(), "preimage_channels");
    std::vector<CqChannel> out;
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        std::vector<DensityOperator> states;
        for (std::size_t m : f.regularity()) {
            states.push_back(mix(v, f.preimage(s, m)));
        }
        out.emplace_back(std::move(states));
    }
    return out;
}

double mean_preimage_divergence(const BriFunction &f, const CqChannel &v,
                                std::size_t m) {
    require_alphabet(f, v.size(), "mean_preimage_divergence");
    require_regular(f, m, "mean_preimage_divergence");
    return mean_divergence(f, SubnormalizedCqChannel::from_channel(v), m);
}

BoundReport bound_divasmi(const BriFunction &f, const CqChannel &v,
                          std::span<const double> m_dist) {
    const double lhs = leakage_cr(m_dist, preimage_channels(f, v));
    double rhs = 0.0;
    for (std::size_t m : f.regularity()) {
        rhs = std::max(rhs, mean_preimage_divergence(f, v, m));
    }
    return make_report("divergence_max", lhs, rhs);
}

BoundReport bound_subnorm(const BriFunction &f, const CqChannel &v,
                          const SubnormalizedCqChannel &v_prime, std::size_t m) {
    require_alphabet(f, v.size(), "bound_subnorm");
    require_alphabet(f, v_prime.size(), "bound_subnorm");
    require_regular(f, m, "bound_subnorm");
    const double slack = v_prime.ordering_slack(v);
    if (slack < -tol::negative_eigenvalue) {
        std::ostringstream os;
        os << "bound_subnorm: V' <= V fails (smallest eigenvalue of "
           << "V - V' is " << slack << ")";
        throw PreconditionError(os.str());
    }
    const double lhs = mean_preimage_divergence(f, v, m);
    const double rhs = mean_divergence(f, v_prime, m) +
                       subnorm_penalty(f, v_prime.epsilon());
    return make_report("subnormalization", lhs, rhs);
}

BoundReport bound_renyi(const BriFunction &f,
                        const SubnormalizedCqChannel &v_prime, std::size_t m) {
    require_alphabet(f, v_prime.size(), "bound_renyi");
    require_regular(f, m, "bound_renyi");
    const double lhs = mean_divergence(f, v_prime, m);
    const double rhs = std::log2(mean_exp_d2(f, v_prime, m)) + v_prime.epsilon();
    return make_report("renyi2", lhs, rhs);
}

double renyi_correction(double eps) {
    if (!(eps >= 0.0) || eps >= 1.0) {
        throw DomainError("renyi_correction: epsilon outside [0, 1)");
    }
    return -(1.0 + eps) * std::log2(1.0 - eps);
}

BoundReport bound_renyi_subnormalized(const BriFunction &f,
                                      const SubnormalizedCqChannel &v_prime,
                                      std::size_t m) {
    require_alphabet(f, v_prime.size(), "bound_renyi_subnormalized");
    require_regular(f, m, "bound_renyi_subnormalized");
    const double lhs = mean_divergence(f, v_prime, m);
    const double rhs = std::log2(mean_exp_d2(f, v_prime, m)) +
                       renyi_correction(v_prime.epsilon());
    return make_report("renyi2_subnormalized", lhs, rhs);
}

BoundReport bound_exp_d2(const BriFunction &f,
                         const SubnormalizedCqChannel &v_prime, std::size_t m) {
    require_alphabet(f, v_prime.size(), "bound_exp_d2");
    require_regular(f, m, "bound_exp_d2");
    const double lhs = mean_exp_d2(f, v_prime, m);
    const double rhs = lambda2(f, m) * rank_norm(v_prime) + 1.0;
    return make_report("exp_d2_spectral", lhs, rhs);
}

BoundReport bound_corollary(const BriFunction &f, const CqChannel &v,
                            const SubnormalizedCqChannel &v_prime,
                            std::span<const double> m_dist) {
    require_alphabet(f, v_prime.size(), "bound_corollary");
    const double lhs = leakage_cr(m_dist, preimage_channels(f, v));
    const double eps = v_prime.epsilon();
    const double rhs = max_lambda2(f) * rank_norm(v_prime) / kLn2 + eps +
                       subnorm_penalty(f, eps);
    return make_report("leakage_spectral", lhs, rhs);
}

std::vector<BoundReport> certify_chain(const BriFunction &f, const CqChannel &v,
                                       const SubnormalizedCqChannel &v_prime,
                                       std::span<const double> m_dist) {
    std::size_t worst = f.regularity().front();
    double top = -kInfinity;
    for (std::size_t m : f.regularity()) {
        const double d = mean_preimage_divergence(f, v, m);
        if (d > top) {
            top = d;
            worst = m;
        }
    }
    return {bound_divasmi(f, v, m_dist), bound_subnorm(f, v, v_prime, worst),
            bound_renyi(f, v_prime, worst), bound_exp_d2(f, v_prime, worst),
            bound_corollary(f, v, v_prime, m_dist)};
}

BoundReport quadratic_form_bound(const RealMatrix &p, double lambda2,
                                 const ComplexVector &omega) {
    if (p.rows() != omega.size()) {
        throw DimensionError("quadratic_form_bound: vector length");
    }
    const double lhs =
        omega.dot(p.cast<Complex>() * omega).real();
    const Complex overlap =
        omega.sum() / std::sqrt(static_cast<double>(omega.size()));
    const double rhs = lambda2 * omega.squaredNorm() + std::norm(overlap);
    return make_report("quadratic_form", lhs, rhs);
}

} // namespace cqw
