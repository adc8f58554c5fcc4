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

#include "cqwiretap/codes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

/// tr(AB) for square matrices of equal size.
double trace_product(const Matrix &a, const Matrix &b) {
    return (a.cwiseProduct(b.transpose())).sum().real();
}

void require_decoder_dim(const SubPovm &d, Index dim, const char *what) {
    if (d.dim() != dim) {
        std::ostringstream os;
        os << what << ": decoders act on dimension " << d.dim()
           << " but the channel output has dimension " << dim;
        throw DimensionError(os.str());
    }
}

std::uint64_t words_of(std::size_t alphabet, unsigned n) {
    return saturating_pow(alphabet, n);
}

} // namespace

void TransmissionCode::validate() const {
    if (alphabet == 0 || n == 0) {
        throw ValidationError("transmission code needs a nonempty alphabet "
                              "and n >= 1");
    }
    if (codewords.size() != decoders.size()) {
        throw ValidationError("transmission code has a different number of "
                              "codewords and decoders");
    }
    const std::uint64_t words = words_of(alphabet, n);
    for (Word w : codewords) {
        if (w >= words) {
            throw ValidationError("codeword outside X^n");
        }
    }
}

void WiretapCode::validate() const {
    if (alphabet == 0 || n == 0) {
        throw ValidationError("wiretap code needs a nonempty alphabet and "
                              "n >= 1");
    }
    if (encoder.num_outputs() != words_of(alphabet, n)) {
        throw ValidationError("wiretap encoder does not map into X^n");
    }
    if (decoders.size() != encoder.num_inputs()) {
        throw ValidationError("wiretap code has a different number of "
                              "messages and decoders");
    }
}

void CommonRandomnessCode::validate() const {
    if (per_seed.empty()) {
        throw ValidationError("common-randomness code has no seeds");
    }
    for (const auto &c : per_seed) {
        c.validate();
        if (c.num_messages() != per_seed.front().num_messages() ||
            c.n != per_seed.front().n ||
            c.alphabet != per_seed.front().alphabet) {
            throw ValidationError("per-seed codes disagree on the message "
                                  "set, alphabet or block length");
        }
    }
}

TransmissionCode make_transmission_code(
    std::size_t alphabet, unsigned n,
    const std::vector<std::vector<std::size_t>> &codewords, SubPovm decoders) {
    TransmissionCode t;
    t.alphabet = alphabet;
    t.n = n;
    for (const auto &c : codewords) {
        if (c.size() != n) {
            throw ValidationError("codeword length differs from n");
        }
        t.codewords.push_back(symbols_word(c, alphabet));
    }
    t.decoders = std::move(decoders);
    t.validate();
    return t;
}

WiretapCode as_wiretap_code(const TransmissionCode &t) {
    t.validate();
    std::vector<std::vector<SparseEntry>> rows;
    for (Word w : t.codewords) {
        rows.push_back({{w, 1.0}});
    }
    WiretapCode c;
    c.alphabet = t.alphabet;
    c.n = t.n;
    c.encoder = ClassicalChannel(std::move(rows), words_of(t.alphabet, t.n));
    c.decoders = t.decoders;
    return c;
}

std::vector<double> error_per_message(const WiretapCode &code,
                                      const CqChannel &w, Caps caps) {
    code.validate();
    if (w.size() != code.alphabet) {
        throw ValidationError("error: channel alphabet differs from the "
                              "code alphabet");
    }
    const TensorPowerChannel wn = tensor_power(w, code.n, caps);
    require_decoder_dim(code.decoders, wn.dim(), "error");
    std::vector<double> err;
    for (std::size_t m = 0; m < code.num_messages(); ++m) {
        double e = 0.0;
        for (const auto &entry : code.encoder.row(m)) {
            e += entry.prob *
                 (1.0 - trace_product(code.decoders[m].matrix(),
                                      wn.output(entry.index).matrix()));
        }
        err.push_back(std::clamp(e, 0.0, 1.0));
    }
    return err;
}

double error_max(const WiretapCode &code, const CqChannel &w, Caps caps) {
    const auto e = error_per_message(code, w, caps);
    return *std::max_element(e.begin(), e.end());
}

double error_max(const TransmissionCode &code, const CqChannel &w, Caps caps) {
    return error_max(as_wiretap_code(code), w, caps);
}

double error_expected_cr(const CommonRandomnessCode &code, const CqChannel &w,
                         Caps caps) {
    code.validate();
    double total = 0.0;
    for (const auto &c : code.per_seed) {
        total += error_max(c, w, caps);
    }
    return total / static_cast<double>(code.num_seeds());
}

CqChannel eavesdropper_channel(const WiretapCode &code, const CqChannel &v,
                               Caps caps) {
    code.validate();
    if (v.size() != code.alphabet) {
        throw ValidationError("leakage: channel alphabet differs from the "
                              "code alphabet");
    }
    return compose(code.encoder, tensor_power(v, code.n, caps));
}

std::vector<CqChannel> eavesdropper_channels(const CommonRandomnessCode &code,
                                             const CqChannel &v, Caps caps) {
    code.validate();
    std::vector<CqChannel> out;
    for (const auto &c : code.per_seed) {
        out.push_back(eavesdropper_channel(c, v, caps));
    }
    return out;
}

double leakage(const WiretapCode &code, const CqChannel &v,
               std::span<const double> m_dist, Caps caps) {
    return holevo(m_dist, eavesdropper_channel(code, v, caps));
}

double leakage_cr(const CommonRandomnessCode &code, const CqChannel &v,
                  std::span<const double> m_dist, Caps caps) {
    return leakage_cr(m_dist, eavesdropper_channels(code, v, caps));
}

OptimizationResult semantic_leakage(const WiretapCode &code, const CqChannel &v,
                                    const AscentOptions &opts, Caps caps) {
    const CqChannel e = eavesdropper_channel(code, v, caps);
    return adversarial_leakage(std::span<const CqChannel>(&e, 1), opts);
}

OptimizationResult semantic_leakage_cr(const CommonRandomnessCode &code,
                                       const CqChannel &v,
                                       const AscentOptions &opts, Caps caps) {
    return adversarial_leakage(eavesdropper_channels(code, v, caps), opts);
}

CommonRandomnessCode assemble_bri_modular(const TransmissionCode &t,
                                          const BriFunction &f) {
    t.validate();
    if (f.num_inputs() != t.size()) {
        std::ostringstream os;
        os << "assemble_bri_modular: function has " << f.num_inputs()
           << " inputs but the transmission code has " << t.size()
           << " messages";
        throw ValidationError(os.str());
    }
    const Index dim = t.decoders.dim();
    const std::uint64_t words = words_of(t.alphabet, t.n);
    const double weight = 1.0 / static_cast<double>(f.d_s());
    CommonRandomnessCode cr;
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        std::vector<std::vector<SparseEntry>> rows;
        std::vector<MeasurementOperator> decoders;
        for (std::size_t m : f.regularity()) {
            std::vector<SparseEntry> row;
            Matrix d = Matrix::Zero(dim, dim);
            for (std::size_t c : f.preimage(s, m)) {
                row.push_back({t.codewords[c], weight});
                d += t.decoders[c].matrix();
            }
            rows.push_back(std::move(row));
            decoders.push_back(MeasurementOperator::assume_valid(
                HermitianOperator::assume_hermitian(std::move(d))));
        }
        WiretapCode code;
        code.alphabet = t.alphabet;
        code.n = t.n;
        code.encoder = ClassicalChannel(std::move(rows), words);
        code.decoders = SubPovm(std::move(decoders));
        cr.per_seed.push_back(std::move(code));
    }
    return cr;
}

DerandomizedCode derandomize(const TransmissionCode &seed_code,
                             const CommonRandomnessCode &crcode,
                             unsigned blocks, Caps caps) {
    seed_code.validate();
    crcode.validate();
    if (blocks == 0) {
        throw DomainError("derandomize: N must be at least 1");
    }
    if (seed_code.size() != crcode.num_seeds()) {
        std::ostringstream os;
        os << "derandomize: seed code has " << seed_code.size()
           << " messages but there are " << crcode.num_seeds() << " seeds";
        throw ValidationError(os.str());
    }
    if (seed_code.alphabet != crcode.alphabet()) {
        throw ValidationError("derandomize: seed code and inner code use "
                              "different alphabets");
    }
    const std::uint64_t total = static_cast<std::uint64_t>(seed_code.n) +
                                static_cast<std::uint64_t>(crcode.n()) * blocks;
    if (total > 64 ||
        saturating_pow(crcode.num_messages(), blocks) > caps.max_strings) {
        throw ResourceError("derandomize: N n or |M|^N exceeds the cap");
    }
    return {seed_code, crcode, blocks};
}

std::size_t DerandomizedCode::num_messages() const {
    return static_cast<std::size_t>(
        saturating_pow(inner.num_messages(), blocks));
}

std::vector<std::size_t>
DerandomizedCode::split_message(std::size_t mbar) const {
    std::vector<std::size_t> parts(blocks);
    const std::size_t k = inner.num_messages();
    for (unsigned i = blocks; i-- > 0;) {
        parts[i] = mbar % k;
        mbar /= k;
    }
    return parts;
}

std::vector<double> error_per_message(const DerandomizedCode &code,
                                      const CqChannel &w, Caps caps) {
    const auto &seed = code.seed_code;
    const auto &inner = code.inner;
    const std::size_t ns = inner.num_seeds();
    const std::size_t nm = inner.num_messages();
    const TensorPowerChannel wseed = tensor_power(w, seed.n, caps);
    const TensorPowerChannel wblock = tensor_power(w, inner.n(), caps);
    require_decoder_dim(seed.decoders, wseed.dim(), "derandomized error");
    for (const auto &c : inner.per_seed) {
        require_decoder_dim(c.decoders, wblock.dim(), "derandomized error");
    }

    // a[s][t] = tr(D'_t W(x'_s)); b[s][t][m] = sum_x E^s(x|m) tr(D^t_m W(x)).
    std::vector<std::vector<double>> a(ns, std::vector<double>(ns));
    std::vector<std::vector<std::vector<double>>> b(
        ns, std::vector<std::vector<double>>(ns, std::vector<double>(nm)));
    for (std::size_t s = 0; s < ns; ++s) {
        const Matrix ws = wseed.output(seed.codewords[s]).matrix();
        for (std::size_t t = 0; t < ns; ++t) {
            a[s][t] = trace_product(seed.decoders[t].matrix(), ws);
        }
        for (std::size_t m = 0; m < nm; ++m) {
            for (const auto &entry : inner.per_seed[s].encoder.row(m)) {
                const Matrix wx = wblock.output(entry.index).matrix();
                for (std::size_t t = 0; t < ns; ++t) {
                    b[s][t][m] +=
                        entry.prob *
                        trace_product(inner.per_seed[t].decoders[m].matrix(), wx);
                }
            }
        }
    }
    std::vector<double> err;
    for (std::size_t mbar = 0; mbar < code.num_messages(); ++mbar) {
        const auto parts = code.split_message(mbar);
        double correct = 0.0;
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t t = 0; t < ns; ++t) {
                double p = a[s][t];
                for (std::size_t m : parts) {
                    p *= b[s][t][m];
                }
                correct += p;
            }
        }
        err.push_back(
            std::clamp(1.0 - correct / static_cast<double>(ns), 0.0, 1.0));
    }
    return err;
}

double error_max(const DerandomizedCode &code, const CqChannel &w, Caps caps) {
    const auto e = error_per_message(code, w, caps);
    return *std::max_element(e.begin(), e.end());
}

CqChannel eavesdropper_channel(const DerandomizedCode &code,
                               const CqChannel &v, Caps caps) {
    const auto &seed = code.seed_code;
    const std::size_t ns = code.inner.num_seeds();
    const std::uint64_t d = saturating_pow(static_cast<std::uint64_t>(v.dim()),
                                           code.total_length());
    if (d > caps.max_dim) {
        throw ResourceError("derandomized leakage: output dimension exceeds "
                            "the cap");
    }
    const TensorPowerChannel vseed = tensor_power(v, seed.n, caps);
    const auto blocks = eavesdropper_channels(code.inner, v, caps);
    std::vector<DensityOperator> outs;
    for (std::size_t mbar = 0; mbar < code.num_messages(); ++mbar) {
        const auto parts = code.split_message(mbar);
        Matrix acc = Matrix::Zero(static_cast<Index>(d), static_cast<Index>(d));
        for (std::size_t s = 0; s < ns; ++s) {
            Matrix m = vseed.output(seed.codewords[s]).matrix();
            for (std::size_t part : parts) {
                m = kron(m, blocks[s].output(part).matrix());
            }
            acc += m;
        }
        acc /= static_cast<double>(ns);
        outs.push_back(DensityOperator::assume_valid(
            HermitianOperator::assume_hermitian(std::move(acc))));
    }
    return CqChannel(std::move(outs));
}

WiretapCode DerandomizedCode::to_wiretap_code(Caps caps) const {
    const std::size_t ns = inner.num_seeds();
    const std::size_t k = inner.alphabet();
    const std::uint64_t block_words = saturating_pow(k, inner.n());
    const std::uint64_t words = saturating_pow(k, total_length());
    const std::uint64_t dim =
        static_cast<std::uint64_t>(seed_code.decoders.dim()) *
        saturating_pow(static_cast<std::uint64_t>(inner.per_seed[0].decoders.dim()),
                       blocks);
    if (words == UINT64_MAX || dim > caps.max_dim) {
        throw ResourceError("derandomized code is too large to materialize");
    }
    std::vector<std::vector<SparseEntry>> rows;
    std::vector<MeasurementOperator> decoders;
    for (std::size_t mbar = 0; mbar < num_messages(); ++mbar) {
        const auto parts = split_message(mbar);
        std::vector<SparseEntry> row;
        for (std::size_t s = 0; s < ns; ++s) {
            std::vector<SparseEntry> partial{
                {seed_code.codewords[s], 1.0 / static_cast<double>(ns)}};
            for (std::size_t part : parts) {
                std::vector<SparseEntry> next;
                for (const auto &prefix : partial) {
                    for (const auto &e : inner.per_seed[s].encoder.row(part)) {
                        next.push_back({prefix.index * block_words + e.index,
                                        prefix.prob * e.prob});
                    }
                }
                partial = std::move(next);
            }
            row.insert(row.end(), partial.begin(), partial.end());
        }
        rows.push_back(std::move(row));

        Matrix acc = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
        for (std::size_t s = 0; s < ns; ++s) {
            Matrix m = seed_code.decoders[s].matrix();
            for (std::size_t part : parts) {
                m = kron(m, inner.per_seed[s].decoders[part].matrix());
            }
            acc += m;
        }
        decoders.push_back(MeasurementOperator::assume_valid(
            HermitianOperator::assume_hermitian(std::move(acc))));
    }
    WiretapCode c;
    c.alphabet = k;
    c.n = total_length();
    c.encoder = ClassicalChannel(std::move(rows), words);
    c.decoders = SubPovm(std::move(decoders));
    return c;
}

double rate(const TransmissionCode &code) {
    return std::log2(static_cast<double>(code.size())) / code.n;
}

double rate(const WiretapCode &code) {
    return std::log2(static_cast<double>(code.num_messages())) / code.n;
}

double rate(const CommonRandomnessCode &code) {
    return std::log2(static_cast<double>(code.num_messages())) / code.n();
}

double rate(const DerandomizedCode &code) {
    return static_cast<double>(code.blocks) *
           std::log2(static_cast<double>(code.inner.num_messages())) /
           static_cast<double>(code.total_length());
}

WiretapCode restrict_messages(const WiretapCode &code,
                              std::span<const std::size_t> keep) {
    code.validate();
    if (keep.empty()) {
        throw DomainError("restrict_messages: no messages kept");
    }
    std::vector<std::vector<SparseEntry>> rows;
    std::vector<MeasurementOperator> decoders;
    for (std::size_t m : keep) {
        if (m >= code.num_messages()) {
            throw DomainError("restrict_messages: message out of range");
        }
        rows.push_back(code.encoder.row(m));
        decoders.push_back(code.decoders[m]);
    }
    WiretapCode c;
    c.alphabet = code.alphabet;
    c.n = code.n;
    c.encoder = ClassicalChannel(std::move(rows), code.encoder.num_outputs());
    c.decoders = SubPovm(std::move(decoders));
    return c;
}

} // namespace cqw
