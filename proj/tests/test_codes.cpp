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

#include <cmath>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cqwiretap/bri.hpp"
#include "cqwiretap/codes.hpp"
#include "cqwiretap/errors.hpp"
#include "cqwiretap/random_instances.hpp"
#include "oracles.hpp"
#include "toys.hpp"

using namespace cqw;
using Catch::Approx;

TEST_CASE("transmission code validation", "[codes]") {
    CHECK_THROWS(make_transmission_code(2, 1, {{0}, {2}},
                                        toys::noisy_binary_decoders(0.0)));
    CHECK_THROWS(make_transmission_code(2, 2, {{0}, {1}},
                                        toys::noisy_binary_decoders(0.0)));
    CHECK_THROWS(make_transmission_code(2, 1, {{0}}, toys::noisy_binary_decoders(0.0)));
}

TEST_CASE("error of wiretap codes", "[codes]") {
    const auto w = toys::noiseless(2);
    const auto perfect = toys::perfect_code(2, 2, 4);
    CHECK(error_max(perfect, w) == 0.0);
    const std::vector<MeasurementOperator> zeros(
        2, MeasurementOperator(Matrix(Matrix::Zero(2, 2))));
    const auto silent = make_transmission_code(2, 1, {{0}, {1}}, SubPovm(zeros));
    CHECK(error_max(silent, w) == Approx(1.0));
    CHECK(error_max(toys::noisy_binary_code(0.1), w) == Approx(0.1).margin(1e-15));

    // random 2-message qubit code against term-by-term summation
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const CqChannel ch = random_channel(rng, 2, 2);
        WiretapCode c;
        c.alphabet = 2;
        c.n = 2;
        c.encoder = random_stochastic(rng, 2, 4);
        const Matrix u = random_unitary(rng, 4);
        Matrix p0 = u.col(0) * u.col(0).adjoint() + u.col(1) * u.col(1).adjoint();
        Matrix p1 = u.col(2) * u.col(2).adjoint();
        c.decoders = SubPovm({MeasurementOperator(p0), MeasurementOperator(p1)});
        const auto errs = error_per_message(c, ch);
        for (std::size_t m = 0; m < 2; ++m) {
            double e = 0.0;
            for (Word x = 0; x < 4; ++x) {
                const auto s = word_symbols(x, 2, 2);
                const Matrix out = oracle::kron(ch.output(s[0]).matrix(),
                                                ch.output(s[1]).matrix());
                e += c.encoder.prob(m, x) *
                     (1.0 - (c.decoders[m].matrix() * out).trace().real());
            }
            CHECK(errs[m] == Approx(e).margin(1e-12));
        }
        CHECK(error_max(c, ch) == Approx(std::max(errs[0], errs[1])));
    }
}

TEST_CASE("expected error over seeds", "[codes]") {
    const auto w = toys::noiseless(2);
    CommonRandomnessCode cr = toys::xor_cr_code(0.1);
    CHECK(error_expected_cr(cr, w) == Approx(0.1).margin(1e-15));
    cr.per_seed[1].decoders = toys::noisy_binary_decoders(0.3, true);
    CHECK(error_expected_cr(cr, w) == Approx(0.2).margin(1e-15));
    CommonRandomnessCode single{{cr.per_seed[0]}};
    CHECK(error_expected_cr(single, w) == Approx(error_max(cr.per_seed[0], w)));
}

TEST_CASE("BRI modular assembly", "[codes]") {
    const auto t = toys::perfect_code(2, 2, 4);
    const auto f = construct_exhaustive(4, 4, 2, 1.0 - 1e-9);
    REQUIRE(f.has_value());
    const auto cr = assemble_bri_modular(t, *f);
    const auto w = toys::noiseless(2);
    CHECK(cr.num_seeds() == 4);
    CHECK(cr.num_messages() == 2);
    for (const auto &c : cr.per_seed) {
        CHECK(error_max(c, w) == 0.0);
        Matrix sum = Matrix::Zero(4, 4);
        for (const auto &d : c.decoders.elements()) {
            sum += d.matrix();
        }
        CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-15);
    }

    // Composed-channel oracle: U = E' V^n with E' the uniform preimage
    // encoder; leakage_cr must match the seed-averaged Holevo quantity.
    Rng rng(42);
    const CqChannel v = random_channel(rng, 2, 2);
    const TensorPowerChannel vn = tensor_power(v, 2);
    const std::vector<double> p{0.35, 0.65};
    double direct = 0.0;
    for (std::size_t s = 0; s < f->num_seeds(); ++s) {
        std::vector<oracle::Matrix> outs;
        for (std::size_t m : f->regularity()) {
            oracle::Matrix acc = oracle::Matrix::Zero(4, 4);
            const auto pre = f->preimage(s, m);
            for (std::size_t c : pre) {
                acc += vn.output(t.codewords[c]).matrix();
            }
            outs.push_back(acc / static_cast<double>(pre.size()));
        }
        direct += oracle::holevo(p, outs);
    }
    direct /= static_cast<double>(f->num_seeds());
    CHECK(leakage_cr(cr, v, p) == Approx(direct).margin(1e-9));

    // d_S = 1: each seed relabels the transmission code.
    BriTable id{4, 4, 4, {}};
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t x = 0; x < 4; ++x) {
            id.values.push_back((x + s) % 4);
        }
    }
    const BriFunction g(id, {0, 1, 2, 3});
    const auto relabeled = assemble_bri_modular(t, g);
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t m = 0; m < 4; ++m) {
            const auto &row = relabeled.per_seed[s].encoder.row(m);
            REQUIRE(row.size() == 1);
            CHECK(row[0].index == t.codewords[(m + 4 - s) % 4]);
        }
    }
    CHECK_THROWS_AS(assemble_bri_modular(toys::perfect_code(2, 1, 2), *f),
                    ValidationError);
}

TEST_CASE("modular error never exceeds the transmission error",
          "[codes][property]") {
    Rng rng(43);
    const auto w = random_channel(rng, 2, 2);
    const auto f = construct_exhaustive(4, 4, 2, 1.0 - 1e-9);
    REQUIRE(f.has_value());
    for (int t = 0; t < 10; ++t) {
        const Matrix u = random_unitary(rng, 4);
        std::vector<MeasurementOperator> dec;
        for (Index c = 0; c < 4; ++c) {
            dec.emplace_back(Matrix(u.col(c) * u.col(c).adjoint()));
        }
        const auto code = make_transmission_code(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                                                 SubPovm(dec));
        const double et = error_max(code, w);
        for (const auto &c : assemble_bri_modular(code, *f).per_seed) {
            CHECK(error_max(c, w) <= et + 1e-12);
        }
    }
}

TEST_CASE("rates", "[codes]") {
    CHECK(rate(toys::perfect_code(2, 1, 2)) == 1.0);
    CHECK(rate(toys::perfect_code(2, 2, 4)) == 1.0);
    const auto d = derandomize(toys::noisy_binary_code(0.0), toys::xor_cr_code(0.0), 3);
    CHECK(rate(d) == 3.0 * 1.0 / 4.0);
    CHECK(d.total_length() == 4);
    CHECK(d.num_messages() == 8);
}

TEST_CASE("derandomization", "[codes]") {
    const auto w = toys::noiseless(2);
    const auto perfect = derandomize(toys::noisy_binary_code(0.0),
                                     toys::xor_cr_code(0.0), 1);
    CHECK(error_max(perfect, w) == 0.0);

    const std::vector<double> eps{0.0, 0.05, 0.1};
    for (double ep : eps) {
        for (double e : eps) {
            for (unsigned n = 1; n <= 3; ++n) {
                const auto d = derandomize(toys::noisy_binary_code(ep),
                                           toys::xor_cr_code(e), n);
                const double err = error_max(d, w);
                CHECK(err <= ep + e * n + 1e-12);
                // blockwise evaluation equals the monolithic decoder
                const WiretapCode mono = d.to_wiretap_code();
                const auto a = error_per_message(d, w);
                const auto b = error_per_message(mono, w);
                REQUIRE(a.size() == b.size());
                for (std::size_t i = 0; i < a.size(); ++i) {
                    CHECK(a[i] == Approx(b[i]).margin(1e-12));
                }
            }
        }
    }
    CHECK_THROWS_AS(derandomize(toys::perfect_code(2, 2, 3), toys::xor_cr_code(0.0), 1),
                    ValidationError);
    CHECK_THROWS_AS(derandomize(toys::noisy_binary_code(0.0), toys::xor_cr_code(0.0),
                                40),
                    ResourceError);
}

TEST_CASE("derandomized leakage obeys the per-block budget", "[codes]") {
    const auto v = toys::binary_symmetric(0.2);
    const auto cr = toys::xor_cr_code(0.0);
    AscentOptions opts;
    opts.seed = 5;
    const double per_block = semantic_leakage_cr(cr, v, opts).value;
    for (unsigned n = 1; n <= 2; ++n) {
        const auto d = derandomize(toys::noisy_binary_code(0.0), cr, n);
        const CqChannel eve = eavesdropper_channel(d, v);
        const auto leak = adversarial_leakage(std::span<const CqChannel>(&eve, 1), opts);
        CHECK(leak.value <= n * per_block + 1e-9);
        // same channel through the monolithic encoder
        const CqChannel mono = eavesdropper_channel(d.to_wiretap_code(), v);
        for (std::size_t m = 0; m < mono.size(); ++m) {
            CHECK((mono.output(m).matrix() - eve.output(m).matrix()).norm() < 1e-12);
        }
    }
}

TEST_CASE("restricting messages", "[codes]") {
    const auto c = as_wiretap_code(toys::perfect_code(2, 2, 4));
    const std::vector<std::size_t> keep{3, 1};
    const auto r = restrict_messages(c, keep);
    CHECK(r.num_messages() == 2);
    CHECK(r.encoder.row(0)[0].index == 3);
    CHECK_THROWS(restrict_messages(c, std::vector<std::size_t>{}));
}
