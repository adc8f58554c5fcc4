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
 * Transmission, wiretap and common-randomness codes, the BRI modular
 * assembly, derandomization by sending the seed, and the error and leakage
 * evaluators for each.
 *
 * Codewords and encoder supports are strings of X^n stored as Words. A
 * decoder for block length n acts on the n-fold tensor power of the
 * receiver's space.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cqwiretap/bri.hpp"
#include "cqwiretap/caps.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"

namespace cqw {

struct TransmissionCode {
    std::size_t alphabet = 0;
    unsigned n = 0;
    std::vector<Word> codewords;
    SubPovm decoders;

    [[nodiscard]] std::size_t size() const noexcept { return codewords.size(); }
    /// Throws ValidationError when the parts are inconsistent.
    void validate() const;
};

struct WiretapCode {
    std::size_t alphabet = 0;
    unsigned n = 0;
    /// Messages -> strings of X^n.
    ClassicalChannel encoder;
    SubPovm decoders;

    [[nodiscard]] std::size_t num_messages() const noexcept {
        return encoder.num_inputs();
    }
    void validate() const;
};

struct CommonRandomnessCode {
    std::vector<WiretapCode> per_seed;

    [[nodiscard]] std::size_t num_seeds() const noexcept {
        return per_seed.size();
    }
    [[nodiscard]] std::size_t num_messages() const {
        return per_seed.at(0).num_messages();
    }
    [[nodiscard]] unsigned n() const { return per_seed.at(0).n; }
    [[nodiscard]] std::size_t alphabet() const {
        return per_seed.at(0).alphabet;
    }
    void validate() const;
};

/**
 * Seed sent with `seed_code` (length n'), then N message blocks encoded with
 * the common-randomness code under that seed. The message set is M^N with
 * m-bar = (m_1, ..., m_N) indexed in base |M|, m_1 most significant. The
 * transmitted string is the seed codeword followed by the N blocks.
 */
struct DerandomizedCode {
    TransmissionCode seed_code;
    CommonRandomnessCode inner;
    unsigned blocks = 1;

    [[nodiscard]] std::size_t num_messages() const;
    [[nodiscard]] unsigned total_length() const {
        return seed_code.n + inner.n() * blocks;
    }
    [[nodiscard]] std::vector<std::size_t> split_message(std::size_t mbar) const;

    /// Monolithic wiretap code on X^{n'+nN} (subject to caps).
    [[nodiscard]] WiretapCode to_wiretap_code(Caps caps = Caps::from_env()) const;
};

/// Word of a codeword string given as symbols.
[[nodiscard]] TransmissionCode make_transmission_code(
    std::size_t alphabet, unsigned n,
    const std::vector<std::vector<std::size_t>> &codewords, SubPovm decoders);

/// Deterministic encoder m -> codeword m of `t`, same decoders.
[[nodiscard]] WiretapCode as_wiretap_code(const TransmissionCode &t);

/// Per-message error sum_x E(x|m) (1 - tr D_m W^{(x)n}(x)).
[[nodiscard]] std::vector<double> error_per_message(const WiretapCode &code,
                                                    const CqChannel &w,
                                                    Caps caps = Caps::from_env());
[[nodiscard]] double error_max(const WiretapCode &code, const CqChannel &w,
                               Caps caps = Caps::from_env());
[[nodiscard]] double error_max(const TransmissionCode &code, const CqChannel &w,
                               Caps caps = Caps::from_env());
/// (1/|S|) sum_s error_max(per_seed[s]).
[[nodiscard]] double error_expected_cr(const CommonRandomnessCode &code,
                                       const CqChannel &w,
                                       Caps caps = Caps::from_env());

/// E V^{(x)n} for the wiretap code's encoder.
[[nodiscard]] CqChannel eavesdropper_channel(const WiretapCode &code,
                                             const CqChannel &v,
                                             Caps caps = Caps::from_env());
/// E^s V^{(x)n} for every seed.
[[nodiscard]] std::vector<CqChannel>
eavesdropper_channels(const CommonRandomnessCode &code, const CqChannel &v,
                      Caps caps = Caps::from_env());

[[nodiscard]] double leakage(const WiretapCode &code, const CqChannel &v,
                             std::span<const double> m_dist,
                             Caps caps = Caps::from_env());
[[nodiscard]] double leakage_cr(const CommonRandomnessCode &code,
                                const CqChannel &v,
                                std::span<const double> m_dist,
                                Caps caps = Caps::from_env());
/// Max over message distributions.
[[nodiscard]] OptimizationResult
semantic_leakage(const WiretapCode &code, const CqChannel &v,
                 const AscentOptions &opts = {}, Caps caps = Caps::from_env());
[[nodiscard]] OptimizationResult
semantic_leakage_cr(const CommonRandomnessCode &code, const CqChannel &v,
                    const AscentOptions &opts = {},
                    Caps caps = Caps::from_env());

/**
 * Modular code: for seed s and the i-th regular output m, the encoder is
 * uniform over the codewords {x_c : f_s(c) = m} and the decoder is the sum
 * of the corresponding D_c. Messages are indexed by position in
 * f.regularity().
 */
[[nodiscard]] CommonRandomnessCode assemble_bri_modular(const TransmissionCode &t,
                                                        const BriFunction &f);

/// Requires seed_code.size() == crcode.num_seeds() and N >= 1.
[[nodiscard]] DerandomizedCode derandomize(const TransmissionCode &seed_code,
                                           const CommonRandomnessCode &crcode,
                                           unsigned blocks,
                                           Caps caps = Caps::from_env());

/// Blockwise exact error per message m-bar.
[[nodiscard]] std::vector<double> error_per_message(const DerandomizedCode &code,
                                                    const CqChannel &w,
                                                    Caps caps = Caps::from_env());
[[nodiscard]] double error_max(const DerandomizedCode &code, const CqChannel &w,
                               Caps caps = Caps::from_env());

/// Eavesdropper outputs per m-bar, assembled from block states.
[[nodiscard]] CqChannel eavesdropper_channel(const DerandomizedCode &code,
                                             const CqChannel &v,
                                             Caps caps = Caps::from_env());

[[nodiscard]] double rate(const TransmissionCode &code);
[[nodiscard]] double rate(const WiretapCode &code);
[[nodiscard]] double rate(const CommonRandomnessCode &code);
[[nodiscard]] double rate(const DerandomizedCode &code);

/// Keeps the messages listed in `keep`, in that order.
[[nodiscard]] WiretapCode restrict_messages(const WiretapCode &code,
                                            std::span<const std::size_t> keep);

} // namespace cqw
