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

#include "cqwiretap/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

/// Absolute slack on the typicality test, so exact rationals such as 3/4
/// are not lost to rounding.
constexpr double kTypicalSlack = 1e-12;
/// Eigenvalues closer than this form one degenerate eigenspace.
constexpr double kDegenerate = 1e-10;

double log2_or_neg_inf(double x) {
    return x > 0.0 ? std::log2(x) : -kInfinity;
}

/// Statistics of the typical strings of length `len` for distribution q,
/// accumulated by type.
struct BlockStats {
    double count = 0.0;
    double min_log = kInfinity;
    double max_log = -kInfinity;
    double weight = 0.0;
};

BlockStats block_stats(std::span<const double> q, std::size_t len,
                       double delta) {
    BlockStats st;
    std::vector<std::size_t> counts(q.size(), 0);
    auto rec = [&](auto &&self, std::size_t i, std::size_t remaining) -> void {
        if (i + 1 == q.size()) {
            counts[i] = remaining;
            if (!is_typical_counts(counts, q, delta)) {
                return;
            }
            // log2 of the multinomial coefficient
            double log_mult = std::lgamma(static_cast<double>(len) + 1.0);
            double log_eig = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) {
                log_mult -= std::lgamma(static_cast<double>(counts[j]) + 1.0);
                if (counts[j] > 0) {
                    log_eig += static_cast<double>(counts[j]) * std::log2(q[j]);
                }
            }
            const double mult = std::round(std::exp(log_mult));
            st.count += mult;
            st.min_log = std::min(st.min_log, log_eig);
            st.max_log = std::max(st.max_log, log_eig);
            st.weight += mult * std::exp2(log_eig);
            return;
        }
        for (std::size_t a = 0; a <= remaining; ++a) {
            counts[i] = a;
            self(self, i + 1, remaining - a);
        }
    };
    if (q.empty()) {
        return st;
    }
    rec(rec, 0, len);
    return st;
}

std::vector<double> to_vector(const RealVector &v) {
    return {v.data(), v.data() + v.size()};
}

/// Columns of U_1 (x) ... (x) U_n selected by index strings.
Matrix product_columns(const std::vector<const Matrix *> &bases,
                       const std::vector<std::vector<std::size_t>> &strings,
                       Index dim) {
    Matrix cols(dim, static_cast<Index>(strings.size()));
    for (std::size_t c = 0; c < strings.size(); ++c) {
        ComplexVector v = bases[0]->col(static_cast<Index>(strings[c][0]));
        for (std::size_t i = 1; i < bases.size(); ++i) {
            const ComplexVector u =
                bases[i]->col(static_cast<Index>(strings[c][i]));
            ComplexVector next(v.size() * u.size());
            for (Index a = 0; a < v.size(); ++a) {
                next.segment(a * u.size(), u.size()) = v(a) * u;
            }
            v = std::move(next);
        }
        cols.col(static_cast<Index>(c)) = v;
    }
    return cols;
}

Index checked_power_dim(Index d, unsigned n, const Caps &caps, const char *what) {
    const std::uint64_t dim = saturating_pow(static_cast<std::uint64_t>(d), n);
    if (dim > caps.max_dim || dim > caps.max_strings) {
        std::ostringstream os;
        os << what << ": dimension " << d << "^" << n << " exceeds the cap";
        throw ResourceError(os.str());
    }
    return static_cast<Index>(dim);
}

void validate_delta(double delta) {
    if (!(delta > 0.0)) {
        throw DomainError("typicality: delta must be positive");
    }
}

} // namespace

bool is_typical_counts(std::span<const std::size_t> counts,
                       std::span<const double> p, double delta) {
    if (counts.size() != p.size()) {
        throw DimensionError("is_typical: counts and distribution differ in "
                             "length");
    }
    std::size_t n = 0;
    for (std::size_t c : counts) {
        n += c;
    }
    if (n == 0) {
        return true;
    }
    const double tol = delta / static_cast<double>(p.size()) + kTypicalSlack;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] <= 0.0 && counts[a] > 0) {
            return false;
        }
        if (std::abs(static_cast<double>(counts[a]) / static_cast<double>(n) -
                     p[a]) > tol) {
            return false;
        }
    }
    return true;
}

bool is_typical(std::span<const std::size_t> symbols, std::span<const double> p,
                double delta) {
    std::vector<std::size_t> counts(p.size(), 0);
    for (std::size_t s : symbols) {
        if (s >= p.size()) {
            throw DomainError("is_typical: symbol outside the alphabet");
        }
        ++counts[s];
    }
    return is_typical_counts(counts, p, delta);
}

TypicalSet typical_set(std::span<const double> p, unsigned n, double delta,
                       Caps caps) {
    validate_delta(delta);
    if (p.empty() || n == 0) {
        throw DomainError("typical_set: empty alphabet or n = 0");
    }
    const std::uint64_t words = saturating_pow(p.size(), n);
    if (words > caps.max_strings) {
        throw ResourceError("typical_set: |X|^n exceeds the enumeration cap");
    }
    TypicalSet t{{p.begin(), p.end()}, n, delta, {}};
    for (Word w = 0; w < words; ++w) {
        if (is_typical(word_symbols(w, p.size(), n), p, delta)) {
            t.members.push_back(w);
        }
    }
    return t;
}

Spectrum canonical_eigenbasis(const HermitianOperator &rho) {
    const Spectrum asc = eigh(rho);
    const Index d = asc.values.size();
    Spectrum out;
    out.values = asc.values.reverse();
    out.vectors = asc.vectors.rowwise().reverse();
    const double thr = support_threshold(out.values);
    Index start = 0;
    while (start < d) {
        Index end = start + 1;
        while (end < d &&
               std::abs(out.values(end) - out.values(start)) <= kDegenerate) {
            ++end;
        }
        const Matrix q = out.vectors.middleCols(start, end - start);
        const Matrix proj = q * q.adjoint();
        std::vector<ComplexVector> chosen;
        for (Index i = 0; i < d && static_cast<Index>(chosen.size()) < end - start;
             ++i) {
            ComplexVector v = proj.col(i);
            for (const auto &c : chosen) {
                v -= c.dot(v) * c;
            }
            const double norm = v.norm();
            if (norm > 1e-6) {
                v /= norm;
                for (Index k = 0; k < d; ++k) {
                    if (std::abs(v(k)) > 1e-12) {
                        v *= std::conj(v(k)) / std::abs(v(k));
                        break;
                    }
                }
                chosen.push_back(v);
            }
        }
        for (std::size_t c = 0; c < chosen.size(); ++c) {
            out.vectors.col(start + static_cast<Index>(c)) = chosen[c];
        }
        start = end;
    }
    for (Index i = 0; i < d; ++i) {
        if (out.values(i) <= thr) {
            out.values(i) = 0.0;
        }
    }
    return out;
}

TypicalProjector typical_projector(const DensityOperator &rho, unsigned n,
                                   double delta, Caps caps) {
    validate_delta(delta);
    const Spectrum s = canonical_eigenbasis(rho.op());
    const Index d = rho.dim();
    const Index dim = checked_power_dim(d, n, caps, "typical_projector");
    TypicalProjector t;
    t.n = n;
    t.delta = delta;
    t.eigenvalues = to_vector(s.values);
    t.basis = s.vectors;
    std::vector<std::vector<std::size_t>> strings;
    for (Word w = 0; w < static_cast<Word>(dim); ++w) {
        auto sym = word_symbols(w, static_cast<std::size_t>(d), n);
        if (is_typical(sym, t.eigenvalues, delta)) {
            strings.push_back(std::move(sym));
        }
    }
    t.rank = strings.size();
    Matrix pi = Matrix::Zero(dim, dim);
    if (!strings.empty()) {
        const std::vector<const Matrix *> bases(n, &t.basis);
        const Matrix cols = product_columns(bases, strings, dim);
        pi = cols * cols.adjoint();
    }
    t.projector = MeasurementOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(pi)));
    return t;
}

ConditionalTypicalProjector cond_typical_projector(const CqChannel &v,
                                                   std::span<const std::size_t> word,
                                                   double delta, Caps caps) {
    validate_delta(delta);
    if (word.empty()) {
        throw DomainError("cond_typical_projector: empty string");
    }
    const Index d = v.dim();
    const auto n = static_cast<unsigned>(word.size());
    const Index dim = checked_power_dim(d, n, caps, "cond_typical_projector");
    std::vector<Spectrum> spectra;
    for (std::size_t a = 0; a < v.size(); ++a) {
        spectra.push_back(canonical_eigenbasis(v.output(a).op()));
    }
    std::vector<std::vector<double>> dists;
    for (const auto &s : spectra) {
        dists.push_back(to_vector(s.values));
    }
    std::vector<const Matrix *> bases;
    for (std::size_t x : word) {
        if (x >= v.size()) {
            throw DomainError("cond_typical_projector: symbol outside the "
                              "alphabet");
        }
        bases.push_back(&spectra[x].vectors);
    }
    std::vector<std::vector<std::size_t>> strings;
    std::vector<std::size_t> counts(static_cast<std::size_t>(d));
    for (Word w = 0; w < static_cast<Word>(dim); ++w) {
        const auto sym = word_symbols(w, static_cast<std::size_t>(d), n);
        bool ok = true;
        for (std::size_t a = 0; a < v.size() && ok; ++a) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (word[i] == a) {
                    ++counts[sym[i]];
                }
            }
            ok = is_typical_counts(counts, dists[a], delta);
        }
        if (ok) {
            strings.push_back(sym);
        }
    }
    ConditionalTypicalProjector c;
    c.word.assign(word.begin(), word.end());
    c.delta = delta;
    c.rank = strings.size();
    Matrix pi = Matrix::Zero(dim, dim);
    if (!strings.empty()) {
        const Matrix cols = product_columns(bases, strings, dim);
        pi = cols * cols.adjoint();
    }
    c.projector = MeasurementOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(pi)));
    return c;
}

double typical_gamma(std::span<const double> p, double delta) {
    double top = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            top = std::max(top, std::abs(std::log2(v)));
        }
    }
    return delta * top;
}

namespace {

double plain_conditional_gamma(const CqChannel &v, std::span<const double> p,
                               double delta) {
    double top = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a) {
        if (p[a] <= 0.0) {
            continue;
        }
        const auto eig = to_vector(canonical_eigenbasis(v.output(a).op()).values);
        top = std::max(top, typical_gamma(eig, 1.0));
    }
    return delta * top;
}

} // namespace

double conditional_gamma(const CqChannel &v, std::span<const double> p,
                         double delta) {
    if (p.size() != v.size()) {
        throw DimensionError("conditional_gamma: distribution length");
    }
    double entropies = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a) {
        if (p[a] > 0.0) {
            entropies += entropy(v.output(a));
        }
    }
    return plain_conditional_gamma(v, p, delta) +
           delta / static_cast<double>(v.size()) * entropies;
}

TypicalityReport check_te_properties(const DensityOperator &rho, unsigned n,
                                     double delta) {
    validate_delta(delta);
    const auto e = to_vector(canonical_eigenbasis(rho.op()).values);
    const double s = shannon_entropy(e);
    const BlockStats st = block_stats(e, n, delta);
    TypicalityReport r;
    r.n = n;
    r.delta = delta;
    r.gamma = typical_gamma(e, delta);
    r.beta = r.gamma;
    r.weight = st.weight;
    r.rank = static_cast<std::size_t>(st.count);
    const double nn = static_cast<double>(n);
    r.exact.push_back(make_report("typical_eigenvalue_lower",
                                  -nn * (s + r.gamma), st.min_log));
    r.exact.push_back(make_report("typical_eigenvalue_upper", st.max_log,
                                  -nn * (s - r.gamma)));
    r.exact.push_back(make_report("typical_rank_upper",
                                  log2_or_neg_inf(st.count), nn * (s + r.beta)));
    // Every typical eigenvalue is at most 2^{-n(S-gamma)}, so the captured
    // weight bounds the rank from below at any n.
    r.exact.push_back(make_report(
        "typical_rank_lower_weighted", nn * (s - r.beta),
        st.weight > 0.0 ? std::log2(st.count) - std::log2(st.weight)
                        : kInfinity));
    r.asymptotic.push_back(make_report("typical_rank_lower", nn * (s - r.beta),
                                       log2_or_neg_inf(st.count)));
    return r;
}

TypicalityReport check_te_properties(std::span<const double> p,
                                     const CqChannel &v, unsigned n,
                                     double delta, Caps caps) {
    validate_delta(delta);
    if (p.size() != v.size()) {
        throw DimensionError("check_te_properties: distribution length");
    }
    const double cond = conditional_entropy(p, v);
    const double gamma = conditional_gamma(v, p, delta);
    const double plain = plain_conditional_gamma(v, p, delta);
    const double nn = static_cast<double>(n);
    std::vector<std::vector<double>> dists;
    for (const auto &o : v.outputs()) {
        dists.push_back(to_vector(canonical_eigenbasis(o.op()).values));
    }

    const DensityOperator pv = average_output(p, v);
    const bool operators = saturating_pow(static_cast<std::uint64_t>(v.dim()),
                                          n) <= caps.max_dim;
    Matrix pi_pv;
    if (operators) {
        pi_pv = typical_projector(pv, n, delta, caps).projector.matrix();
    }
    const TensorPowerChannel vn(v, n, operators ? caps : Caps{~0ULL, ~0ULL, ~0ULL});

    double min_log = kInfinity;
    double max_log = -kInfinity;
    double min_rank = kInfinity;
    double max_rank = 0.0;
    double min_weight = kInfinity;
    double min_weight_pv = kInfinity;
    double min_rank_per_weight = kInfinity;
    std::vector<std::size_t> counts(v.size(), 0);
    auto visit = [&]() {
        double lo = 0.0;
        double hi = 0.0;
        double rank = 1.0;
        double weight = 1.0;
        for (std::size_t a = 0; a < v.size(); ++a) {
            const BlockStats st = block_stats(dists[a], counts[a], delta);
            lo += st.min_log;
            hi += st.max_log;
            rank *= st.count;
            weight *= st.weight;
        }
        min_rank = std::min(min_rank, rank);
        max_rank = std::max(max_rank, rank);
        min_weight = std::min(min_weight, weight);
        if (weight > 0.0) {
            min_rank_per_weight = std::min(
                min_rank_per_weight, std::log2(rank) - std::log2(weight));
        }
        if (rank > 0.0) {
            min_log = std::min(min_log, lo);
            max_log = std::max(max_log, hi);
        }
        if (operators) {
            std::vector<std::size_t> rep;
            for (std::size_t a = 0; a < v.size(); ++a) {
                rep.insert(rep.end(), counts[a], a);
            }
            const double w =
                (pi_pv.cwiseProduct(vn.output(rep).matrix().transpose()))
                    .sum()
                    .real();
            min_weight_pv = std::min(min_weight_pv, w);
        }
    };
    auto rec = [&](auto &&self, std::size_t i, std::size_t remaining) -> void {
        if (i + 1 == v.size()) {
            counts[i] = remaining;
            if (is_typical_counts(counts, p, delta)) {
                visit();
            }
            return;
        }
        for (std::size_t a = 0; a <= remaining; ++a) {
            counts[i] = a;
            self(self, i + 1, remaining - a);
        }
    };
    rec(rec, 0, n);

    TypicalityReport r;
    r.n = n;
    r.delta = delta;
    r.gamma = gamma;
    r.beta = gamma;
    r.weight = std::isinf(min_weight) ? 0.0 : min_weight;
    r.weight_average_projector =
        operators ? (std::isinf(min_weight_pv) ? 0.0 : min_weight_pv)
                  : std::nan("");
    r.rank = static_cast<std::size_t>(max_rank);
    r.exact.push_back(make_report("conditional_eigenvalue_lower",
                                  -nn * (cond + gamma), min_log));
    r.exact.push_back(make_report("conditional_eigenvalue_upper", max_log,
                                  -nn * (cond - gamma)));
    r.exact.push_back(make_report("conditional_rank_upper",
                                  log2_or_neg_inf(max_rank),
                                  nn * (cond + r.beta)));
    r.exact.push_back(make_report("conditional_rank_lower_weighted",
                                  nn * (cond - r.beta), min_rank_per_weight));
    r.asymptotic.push_back(make_report("conditional_rank_lower",
                                       nn * (cond - r.beta),
                                       log2_or_neg_inf(min_rank)));
    r.asymptotic.push_back(make_report("conditional_eigenvalue_lower_plain",
                                       -nn * (cond + plain), min_log));
    r.asymptotic.push_back(make_report("conditional_eigenvalue_upper_plain",
                                       max_log, -nn * (cond - plain)));
    return r;
}

SubnormalizedChannelResult subnormalized_channel(const CqChannel &v,
                                                 std::span<const double> p,
                                                 unsigned n, double delta,
                                                 Caps caps) {
    const TypicalSet t = typical_set(p, n, delta, caps);
    if (t.members.empty()) {
        throw DomainError("subnormalized_channel: the typical set is empty");
    }
    const TensorPowerChannel vn(v, n, caps);
    const Matrix pi_pv =
        typical_projector(average_output(p, v), n, delta, caps).projector.matrix();
    SubnormalizedChannelResult r;
    r.strings = t.members;
    std::vector<DensityOperator> originals;
    std::vector<std::string> labels;
    std::vector<HermitianOperator> projected;
    r.ordering_slack = kInfinity;
    for (Word w : t.members) {
        const auto sym = word_symbols(w, v.size(), n);
        const DensityOperator out = vn.output(sym);
        const Matrix pi_v =
            cond_typical_projector(v, sym, delta, caps).projector.matrix();
        const Matrix sandwich = pi_pv * pi_v * out.matrix() * pi_v * pi_pv;
        projected.push_back(HermitianOperator::assume_hermitian(sandwich));
        r.ordering_slack = std::min(
            r.ordering_slack, min_eigenvalue(out.op() - projected.back()));
        std::string label;
        for (std::size_t s : sym) {
            if (!label.empty()) {
                label += ',';
            }
            label += v.alphabet()[s];
        }
        labels.push_back(std::move(label));
        originals.push_back(out);
    }
    r.original = CqChannel(std::move(labels), std::move(originals));
    r.projected = SubnormalizedCqChannel(std::move(projected), 0.0);
    return r;
}

std::vector<BoundReport> rank_norm_reports(const SubnormalizedChannelResult &r,
                                           const CqChannel &v,
                                           std::span<const double> p,
                                           unsigned n, double delta) {
    const auto &vp = r.projected;
    Matrix mixture = Matrix::Zero(vp.dim(), vp.dim());
    double norm = 0.0;
    for (std::size_t x = 0; x < vp.size(); ++x) {
        mixture += vp.output(x).matrix();
        norm = std::max(norm, operator_norm(vp.output(x)));
    }
    mixture /= static_cast<double>(vp.size());
    const auto rank = static_cast<double>(
        rank_eps(HermitianOperator::assume_hermitian(mixture)));
    const DensityOperator pv = average_output(p, v);
    const double beta =
        typical_gamma(to_vector(canonical_eigenbasis(pv.op()).values), delta);
    const double gamma = conditional_gamma(v, p, delta);
    const double nn = static_cast<double>(n);
    return {
        make_report("projected_norm", log2_or_neg_inf(norm),
                    -nn * (conditional_entropy(p, v) - gamma)),
        make_report("projected_rank", log2_or_neg_inf(rank),
                    nn * (entropy(pv) + beta)),
        make_report("projected_rank_norm", log2_or_neg_inf(rank * norm),
                    nn * (holevo(p, v) + beta + gamma)),
    };
}

} // namespace cqw
