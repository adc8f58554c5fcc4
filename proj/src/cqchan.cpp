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

#include "cqwiretap/cqchan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "cqwiretap/errors.hpp"

namespace cqw {

Caps Caps::from_env() {
    Caps caps;
    if (const char *env = std::getenv("CQWIRETAP_CAP")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) {
            caps.max_dim = v;
        }
    }
    return caps;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        r *= base;
    }
    return r;
}

namespace {

void require_distribution(std::span<const double> p, std::size_t size,
                          const char *what) {
    if (p.size() != size) {
        std::ostringstream os;
        os << what << ": distribution has " << p.size()
           << " entries, expected " << size;
        throw DimensionError(os.str());
    }
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) {
            throw DomainError(std::string(what) +
                              ": negative probability");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream os;
        os << what << ": probabilities sum to " << total;
        throw DomainError(os.str());
    }
}

} // namespace

ClassicalChannel::ClassicalChannel(std::vector<std::vector<SparseEntry>> rows,
                                   std::uint64_t num_outputs)
    : num_outputs_(num_outputs) {
    rows_.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto row = std::move(rows[i]);
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry &a, const SparseEntry &b) {
                      return a.index < b.index;
                  });
        std::vector<SparseEntry> merged;
        double total = 0.0;
        for (const auto &e : row) {
            if (e.index >= num_outputs) {
                throw ValidationError("classical channel entry outside the "
                                      "output alphabet");
            }
            if (!(e.prob >= 0.0)) {
                throw ValidationError("classical channel has a negative "
                                      "entry");
            }
            total += e.prob;
            if (e.prob == 0.0) {
                continue;
            }
            if (!merged.empty() && merged.back().index == e.index) {
                merged.back().prob += e.prob;
            } else {
                merged.push_back(e);
            }
        }
        if (std::abs(total - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "classical channel row " << i << " sums to " << total;
            throw ValidationError(os.str());
        }
        rows_.push_back(std::move(merged));
    }
}

ClassicalChannel ClassicalChannel::from_dense(const RealMatrix &m) {
    std::vector<std::vector<SparseEntry>> rows(
        static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            rows[static_cast<std::size_t>(i)].push_back(
                {static_cast<std::uint64_t>(j), m(i, j)});
        }
    }
    return {std::move(rows), static_cast<std::uint64_t>(m.cols())};
}

ClassicalChannel ClassicalChannel::identity(std::size_t n) {
    std::vector<std::vector<SparseEntry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].push_back({i, 1.0});
    }
    return {std::move(rows), n};
}

double ClassicalChannel::prob(std::size_t i, std::uint64_t j) const {
    const auto &r = row(i);
    auto it = std::lower_bound(
        r.begin(), r.end(), j,
        [](const SparseEntry &e, std::uint64_t k) { return e.index < k; });
    return (it != r.end() && it->index == j) ? it->prob : 0.0;
}

CqChannel::CqChannel(std::vector<DensityOperator> outputs)
    : outputs_(std::move(outputs)) {
    alphabet_.reserve(outputs_.size());
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        alphabet_.push_back(std::to_string(i));
    }
    if (outputs_.empty()) {
        throw ValidationError("channel needs at least one input symbol");
    }
    for (const auto &o : outputs_) {
        if (o.dim() != outputs_.front().dim()) {
            throw DimensionError("channel outputs differ in dimension");
        }
    }
}

CqChannel::CqChannel(std::vector<std::string> alphabet,
                     std::vector<DensityOperator> outputs)
    : CqChannel(std::move(outputs)) {
    if (alphabet.size() != outputs_.size()) {
        throw DimensionError("channel alphabet and outputs differ in size");
    }
    std::vector<std::string> sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("channel alphabet has duplicate symbols");
    }
    alphabet_ = std::move(alphabet);
}

std::size_t CqChannel::index_of(const std::string &label) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end()) {
        throw ValidationError("unknown channel input symbol '" + label + "'");
    }
    return static_cast<std::size_t>(it - alphabet_.begin());
}

TensorPowerChannel::TensorPowerChannel(CqChannel base, unsigned n, Caps caps)
    : base_(std::move(base)), n_(n), caps_(caps) {
    if (n == 0) {
        throw DomainError("tensor_power: n must be at least 1");
    }
    const std::uint64_t d =
        saturating_pow(static_cast<std::uint64_t>(base_.dim()), n);
    if (d > caps.max_dim) {
        std::ostringstream os;
        os << "tensor_power: dimension " << base_.dim() << "^" << n
           << " exceeds the cap " << caps.max_dim;
        throw ResourceError(os.str());
    }
    dim_ = static_cast<Index>(d);
    words_ = saturating_pow(base_.size(), n);
}

std::vector<std::size_t> word_symbols(Word w, std::size_t alphabet,
                                      unsigned n) {
    std::vector<std::size_t> s(n);
    for (unsigned i = n; i-- > 0;) {
        s[i] = static_cast<std::size_t>(w % alphabet);
        w /= alphabet;
    }
    return s;
}

Word symbols_word(std::span<const std::size_t> symbols, std::size_t alphabet) {
    Word w = 0;
    for (std::size_t s : symbols) {
        if (s >= alphabet) {
            throw ValidationError("symbol outside the alphabet");
        }
        w = w * alphabet + s;
    }
    return w;
}

DensityOperator TensorPowerChannel::output(Word w) const {
    if (w >= words_) {
        throw ValidationError("string index outside X^n");
    }
    return output(word_symbols(w, base_.size(), n_));
}

DensityOperator
TensorPowerChannel::output(std::span<const std::size_t> symbols) const {
    if (symbols.size() != n_) {
        throw DimensionError("string length differs from the block length");
    }
    Matrix m = base_.output(symbols[0]).matrix();
    for (std::size_t i = 1; i < symbols.size(); ++i) {
        m = kron(m, base_.output(symbols[i]).matrix());
    }
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(m)));
}

CqChannel TensorPowerChannel::materialize() const {
    if (words_ > caps_.max_strings) {
        throw ResourceError("tensor_power: |X|^n exceeds the string cap");
    }
    std::vector<DensityOperator> outs;
    std::vector<std::string> labels;
    outs.reserve(words_);
    for (Word w = 0; w < words_; ++w) {
        outs.push_back(output(w));
        std::string label;
        for (std::size_t s : word_symbols(w, base_.size(), n_)) {
            if (!label.empty()) {
                label += ',';
            }
            label += base_.alphabet()[s];
        }
        labels.push_back(std::move(label));
    }
    return {std::move(labels), std::move(outs)};
}

TensorPowerChannel tensor_power(const CqChannel &v, unsigned n, Caps caps) {
    return {v, n, caps};
}

namespace {

template <typename OutputFn>
CqChannel compose_with(const ClassicalChannel &e, std::uint64_t alphabet,
                       Index dim, OutputFn &&out) {
    if (e.num_outputs() != alphabet) {
        std::ostringstream os;
        os << "compose: encoder has " << e.num_outputs()
           << " output symbols, channel has " << alphabet;
        throw DimensionError(os.str());
    }
    std::vector<DensityOperator> outs;
    outs.reserve(e.num_inputs());
    for (std::size_t m = 0; m < e.num_inputs(); ++m) {
        Matrix acc = Matrix::Zero(dim, dim);
        for (const auto &entry : e.row(m)) {
            acc += entry.prob * out(entry.index).matrix();
        }
        outs.push_back(DensityOperator::assume_valid(
            HermitianOperator::assume_hermitian(std::move(acc))));
    }
    return CqChannel(std::move(outs));
}

} // namespace

CqChannel compose(const ClassicalChannel &e, const CqChannel &v) {
    return compose_with(e, v.size(), v.dim(), [&](std::uint64_t x) {
        return v.output(static_cast<std::size_t>(x));
    });
}

CqChannel compose(const ClassicalChannel &e, const TensorPowerChannel &v) {
    return compose_with(e, v.num_words(), v.dim(),
                        [&](std::uint64_t x) { return v.output(x); });
}

DensityOperator mix(const CqChannel &v, std::span<const std::size_t> subset) {
    if (subset.empty()) {
        throw DomainError("mix: empty subset");
    }
    Matrix acc = Matrix::Zero(v.dim(), v.dim());
    for (std::size_t x : subset) {
        acc += v.output(x).matrix();
    }
    acc /= static_cast<double>(subset.size());
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(acc)));
}

DensityOperator average_output(std::span<const double> p, const CqChannel &v) {
    require_distribution(p, v.size(), "average_output");
    Matrix acc = Matrix::Zero(v.dim(), v.dim());
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (p[x] > 0.0) {
            acc += p[x] * v.output(x).matrix();
        }
    }
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(acc)));
}

double conditional_entropy(std::span<const double> p, const CqChannel &v) {
    require_distribution(p, v.size(), "conditional_entropy");
    double h = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (p[x] > 0.0) {
            h += p[x] * entropy(v.output(x));
        }
    }
    return h;
}

double holevo(std::span<const double> p, const CqChannel &v) {
    const double chi =
        entropy(average_output(p, v)) - conditional_entropy(p, v);
    return std::max(chi, 0.0);
}

double holevo_relent(std::span<const double> p, const CqChannel &v) {
    require_distribution(p, v.size(), "holevo_relent");
    const DensityOperator pv = average_output(p, v);
    std::vector<HermitianOperator> blocks;
    std::vector<HermitianOperator> product;
    for (std::size_t x = 0; x < v.size(); ++x) {
        blocks.push_back(v.output(x).op());
        product.push_back(pv.op());
    }
    return relative_entropy(classical_quantum(p, blocks),
                            classical_quantum(p, product));
}

double holevo_avgrelent(std::span<const double> p, const CqChannel &v) {
    require_distribution(p, v.size(), "holevo_avgrelent");
    const DensityOperator pv = average_output(p, v);
    double chi = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (p[x] > 0.0) {
            chi += p[x] * relative_entropy(v.output(x), pv);
        }
    }
    return chi;
}

double leakage_cr(std::span<const double> m_dist,
                  std::span<const CqChannel> composed) {
    if (composed.empty()) {
        throw ValidationError("leakage_cr: no seeds");
    }
    double total = 0.0;
    for (const auto &c : composed) {
        if (c.size() != composed.front().size()) {
            throw ValidationError("leakage_cr: seeds disagree on the message "
                                  "set");
        }
        total += holevo(m_dist, c);
    }
    return total / static_cast<double>(composed.size());
}

double leakage_cr(std::span<const double> m_dist,
                  std::span<const ClassicalChannel> encoders,
                  const TensorPowerChannel &v_n) {
    std::vector<CqChannel> composed;
    composed.reserve(encoders.size());
    for (const auto &e : encoders) {
        composed.push_back(compose(e, v_n));
    }
    return leakage_cr(m_dist, composed);
}

std::pair<CqChannel, CqChannel>
complementary_pair(const Matrix &isometry, Index dim_q, Index dim_e,
                   const CqChannel &f) {
    if (isometry.rows() != dim_q * dim_e || isometry.cols() != f.dim()) {
        std::ostringstream os;
        os << "complementary_pair: isometry is " << isometry.rows() << "x"
           << isometry.cols() << ", expected " << dim_q * dim_e << "x"
           << f.dim();
        throw DimensionError(os.str());
    }
    const Matrix gram = isometry.adjoint() * isometry;
    const double dev =
        (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        std::ostringstream os;
        os << "complementary_pair: U*U deviates from identity by " << dev;
        throw ValidationError(os.str());
    }
    std::vector<DensityOperator> w;
    std::vector<DensityOperator> v;
    for (std::size_t x = 0; x < f.size(); ++x) {
        const Matrix joint =
            isometry * f.output(x).matrix() * isometry.adjoint();
        w.push_back(DensityOperator::assume_valid(
            HermitianOperator::assume_hermitian(
                partial_trace(joint, dim_q, dim_e, Subsystem::Second))));
        v.push_back(DensityOperator::assume_valid(
            HermitianOperator::assume_hermitian(
                partial_trace(joint, dim_q, dim_e, Subsystem::First))));
    }
    return {CqChannel(f.alphabet(), std::move(w)),
            CqChannel(f.alphabet(), std::move(v))};
}

} // namespace cqw
