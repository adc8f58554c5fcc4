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
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/errors.hpp"
#include "cqwiretap/random_instances.hpp"
#include "oracles.hpp"

using namespace cqw;
using Catch::Approx;

namespace {

std::vector<oracle::Matrix> states_of(const CqChannel &v) {
    std::vector<oracle::Matrix> out;
    for (const auto &o : v.outputs()) {
        out.push_back(o.matrix());
    }
    return out;
}

CqChannel orthogonal_pure(std::size_t k) {
    std::vector<DensityOperator> outs;
    for (std::size_t x = 0; x < k; ++x) {
        outs.push_back(basis_state(static_cast<Index>(k), static_cast<Index>(x)));
    }
    return CqChannel(std::move(outs));
}

CqChannel constant(const DensityOperator &rho, std::size_t k) {
    return CqChannel(std::vector<DensityOperator>(k, rho));
}

} // namespace

TEST_CASE("classical channel validation", "[cqchan]") {
    CHECK_THROWS(ClassicalChannel({{{0, 0.5}, {1, 0.4}}}, 2));
    CHECK_THROWS(ClassicalChannel({{{0, 1.5}, {1, -0.5}}}, 2));
    CHECK_THROWS(ClassicalChannel({{{3, 1.0}}}, 2));
    const ClassicalChannel c({{{1, 0.25}, {0, 0.5}, {1, 0.25}}}, 2);
    CHECK(c.prob(0, 0) == Approx(0.5));
    CHECK(c.prob(0, 1) == Approx(0.5));
}

TEST_CASE("compose", "[cqchan]") {
    Rng rng(21);
    const CqChannel v = random_channel(rng, 3, 2);
    const CqChannel id = compose(ClassicalChannel::identity(3), v);
    for (std::size_t x = 0; x < 3; ++x) {
        CHECK((id.output(x).matrix() - v.output(x).matrix()).norm() < 1e-14);
    }
    RealMatrix uni = RealMatrix::Constant(2, 3, 1.0 / 3.0);
    const CqChannel u = compose(ClassicalChannel::from_dense(uni), v);
    const std::vector<std::size_t> all{0, 1, 2};
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK((u.output(m).matrix() - mix(v, all).matrix()).norm() < 1e-14);
    }
    const ClassicalChannel e = random_stochastic(rng, 3, 3);
    const CqChannel ev = compose(e, v);
    for (std::size_t m = 0; m < 3; ++m) {
        oracle::Matrix sum = oracle::Matrix::Zero(2, 2);
        for (std::size_t x = 0; x < 3; ++x) {
            sum += e.prob(m, x) * v.output(x).matrix();
        }
        CHECK((ev.output(m).matrix() - sum).norm() < 1e-14);
    }
    CHECK_THROWS_AS(compose(random_stochastic(rng, 2, 4), v), DimensionError);
}

TEST_CASE("tensor power", "[cqchan]") {
    Rng rng(22);
    const CqChannel v = random_channel(rng, 2, 2);
    const TensorPowerChannel v1 = tensor_power(v, 1);
    for (Word w = 0; w < 2; ++w) {
        CHECK((v1.output(w).matrix() - v.output(w).matrix()).norm() < 1e-15);
    }
    const TensorPowerChannel v2 = tensor_power(v, 2);
    for (Word w = 0; w < 4; ++w) {
        const auto s = word_symbols(w, 2, 2);
        const auto out = v2.output(w);
        CHECK((out.matrix() - oracle::kron(v.output(s[0]).matrix(),
                                           v.output(s[1]).matrix()))
                  .norm() < 1e-14);
        CHECK(entropy(out) == Approx(entropy(v.output(s[0])) +
                                     entropy(v.output(s[1])))
                                  .margin(1e-9));
    }
    const CqChannel pure = orthogonal_pure(2);
    const auto p2 = tensor_power(pure, 2).output(symbols_word(
        std::vector<std::size_t>{1, 0}, 2));
    CHECK(std::abs(p2.matrix()(2, 2) - 1.0) < 1e-15);
    CHECK_THROWS_AS(tensor_power(v, 13, Caps{4096, 1000000, 10000000}),
                    ResourceError);
    CHECK(symbols_word(word_symbols(37, 3, 5), 3) == 37);
}

TEST_CASE("mix", "[cqchan]") {
    Rng rng(23);
    const CqChannel v = random_channel(rng, 3, 2);
    const std::vector<std::size_t> single{1};
    CHECK((mix(v, single).matrix() - v.output(1).matrix()).norm() < 1e-15);
    const auto half = mix(orthogonal_pure(2), std::vector<std::size_t>{0, 1});
    const auto e = oracle::eigenvalues(half.matrix());
    CHECK(e[0] == Approx(0.5));
    CHECK(e[1] == Approx(0.5));
    CHECK_THROWS(mix(v, std::vector<std::size_t>{}));
}

TEST_CASE("Holevo forms", "[cqchan]") {
    const std::vector<double> u{0.5, 0.5};
    CHECK(holevo(u, orthogonal_pure(2)) == Approx(1.0).margin(1e-12));
    CHECK(holevo(u, constant(maximally_mixed(2), 2)) == Approx(0.0).margin(1e-12));

    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = 2 + rng.uniform_index(4);
        const Index d = 2 + static_cast<Index>(rng.uniform_index(3));
        const CqChannel v = random_channel(rng, k, d);
        const auto p = random_distribution(rng, k);
        const double chi = holevo(p, v);
        CHECK(chi == Approx(oracle::holevo(p, states_of(v))).margin(1e-9));
        CHECK(holevo_relent(p, v) == Approx(chi).margin(1e-9));
        CHECK(holevo_avgrelent(p, v) == Approx(chi).margin(1e-9));
        const double s_avg = entropy(average_output(p, v));
        CHECK(chi >= -1e-12);
        CHECK(chi <= std::min(s_avg, std::log2(static_cast<double>(k))) + 1e-9);
        double direct = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
            direct += p[x] * oracle::entropy(v.output(x).matrix());
        }
        CHECK(conditional_entropy(p, v) == Approx(direct).margin(1e-9));
        CHECK(s_avg - chi == Approx(direct).margin(1e-9));

        // data processing through a random classical channel
        const std::size_t km = 2 + rng.uniform_index(3);
        const ClassicalChannel e = random_stochastic(rng, km, k);
        const auto pm = random_distribution(rng, km);
        std::vector<double> pushed(k, 0.0);
        for (std::size_t m = 0; m < km; ++m) {
            for (std::size_t x = 0; x < k; ++x) {
                pushed[x] += pm[m] * e.prob(m, x);
            }
        }
        CHECK(holevo(pm, compose(e, v)) <= holevo(pushed, v) + 1e-9);
    }
    CHECK(conditional_entropy(u, orthogonal_pure(2)) == Approx(0.0).margin(1e-12));
    const auto rho = diagonal_state(std::vector<double>{0.75, 0.25});
    CHECK(conditional_entropy(u, constant(rho, 2)) ==
          Approx(entropy(rho)).margin(1e-12));
    CHECK_THROWS(holevo(std::vector<double>{0.5, 0.6}, orthogonal_pure(2)));
}

TEST_CASE("common-randomness leakage", "[cqchan]") {
    Rng rng(25);
    const CqChannel v = random_channel(rng, 2, 2);
    const TensorPowerChannel v1 = tensor_power(v, 1);
    const ClassicalChannel e = random_stochastic(rng, 2, 2);
    const std::vector<double> p{0.3, 0.7};
    const std::vector<ClassicalChannel> one{e};
    CHECK(leakage_cr(p, one, v1) == Approx(holevo(p, compose(e, v))).margin(1e-12));
    const std::vector<ClassicalChannel> copies{e, e, e};
    CHECK(leakage_cr(p, copies, v1) == Approx(holevo(p, compose(e, v))).margin(1e-12));

    // Joint-state oracle: chi(M; S B) with the seed held in a classical
    // register, computed on the block-diagonal state.
    const ClassicalChannel e2 = random_stochastic(rng, 2, 2);
    const std::vector<ClassicalChannel> two{e, e2};
    std::vector<oracle::Matrix> joint;
    for (std::size_t m = 0; m < 2; ++m) {
        oracle::Matrix st = oracle::Matrix::Zero(4, 4);
        st.block(0, 0, 2, 2) = 0.5 * compose(e, v).output(m).matrix();
        st.block(2, 2, 2, 2) = 0.5 * compose(e2, v).output(m).matrix();
        joint.push_back(st);
    }
    CHECK(leakage_cr(p, two, v1) == Approx(oracle::holevo(p, joint)).margin(1e-9));

    const CqChannel cst = constant(random_density(rng, 2), 2);
    CHECK(leakage_cr(p, two, tensor_power(cst, 1)) == Approx(0.0).margin(1e-12));
}

TEST_CASE("adversarial leakage against a grid", "[cqchan][optimizer]") {
    const std::vector<CqChannel> pure{orthogonal_pure(2)};
    const auto r = adversarial_leakage(pure);
    CHECK(r.value == Approx(1.0).margin(1e-9));
    CHECK(r.argmax[0] == Approx(0.5).margin(1e-3));

    Rng rng(26);
    const std::vector<CqChannel> cst{constant(random_density(rng, 2), 3)};
    CHECK(adversarial_leakage(cst).value == Approx(0.0).margin(1e-12));

    for (int t = 0; t < 5; ++t) {
        const std::vector<CqChannel> composed{random_channel(rng, 3, 2)};
        AscentOptions opts;
        opts.seed = 100 + t;
        const auto best = adversarial_leakage(composed, opts);
        double grid_max = 0.0;
        for (const auto &p : oracle::grid(3, oracle::resolution_for(3, 10000))) {
            grid_max = std::max(grid_max, oracle::holevo(p, states_of(composed[0])));
        }
        CHECK(best.value >= grid_max - 1e-6);
        CHECK(std::abs(best.value - grid_max) <= 1e-4);
        const std::vector<double> u(3, 1.0 / 3.0);
        CHECK(best.value >= holevo(u, composed[0]) - 1e-12);
    }
}

TEST_CASE("capacity", "[cqchan][optimizer]") {
    Rng rng(27);
    const CqChannel w = random_channel(rng, 2, 2);
    CHECK(capacity_single_letter(w, w).value == 0.0);
    const auto c = capacity_single_letter(orthogonal_pure(2),
                                          constant(maximally_mixed(2), 2));
    CHECK(c.value == Approx(1.0).margin(1e-9));

    for (int t = 0; t < 3; ++t) {
        const CqChannel a = random_channel(rng, 2, 2);
        const CqChannel b = random_channel(rng, 2, 2);
        CapacityOptions opts;
        opts.seed = 7 + t;
        const auto best = capacity_single_letter(a, b, opts);
        double grid_max = -kInfinity;
        for (const auto &p : oracle::grid(2, 9999)) {
            grid_max = std::max(grid_max, oracle::holevo(p, states_of(a)) -
                                              oracle::holevo(p, states_of(b)));
        }
        CHECK(best.value >= grid_max - 1e-6);
        CHECK(std::abs(best.value - std::max(grid_max, 0.0)) <= 1e-4);
    }
    const auto lb = capacity_lower_bound(orthogonal_pure(2),
                                         constant(maximally_mixed(2), 2), 2);
    CHECK(lb.value == Approx(1.0).margin(1e-6));
}

TEST_CASE("complementary pair", "[cqchan]") {
    // copy isometry |x> -> |x>|x>
    Matrix copy = Matrix::Zero(4, 2);
    copy(0, 0) = 1.0;
    copy(3, 1) = 1.0;
    const CqChannel f = orthogonal_pure(2);
    const auto [w, v] = complementary_pair(copy, 2, 2, f);
    for (std::size_t x = 0; x < 2; ++x) {
        CHECK((w.output(x).matrix() - f.output(x).matrix()).norm() < 1e-14);
        CHECK((v.output(x).matrix() - f.output(x).matrix()).norm() < 1e-14);
    }
    // identity (x) fixed environment state
    Matrix emb = Matrix::Zero(4, 2);
    emb(0, 0) = 1.0;
    emb(2, 1) = 1.0;
    const auto [w2, v2] = complementary_pair(emb, 2, 2, f);
    CHECK((v2.output(0).matrix() - v2.output(1).matrix()).norm() < 1e-14);
    CHECK((w2.output(1).matrix() - f.output(1).matrix()).norm() < 1e-14);

    Rng rng(28);
    for (int t = 0; t < 10; ++t) {
        const Matrix u = random_isometry(rng, 6, 2);
        std::vector<DensityOperator> pure;
        for (int x = 0; x < 3; ++x) {
            pure.push_back(pure_state(random_complex_vector(rng, 2)));
        }
        const auto [a, b] = complementary_pair(u, 2, 3, CqChannel(pure));
        for (std::size_t x = 0; x < 3; ++x) {
            CHECK(a.output(x).op().trace() == Approx(1.0).margin(1e-12));
            CHECK(b.output(x).op().trace() == Approx(1.0).margin(1e-12));
            CHECK(entropy(a.output(x)) == Approx(entropy(b.output(x))).margin(1e-9));
        }
    }
    Matrix bad = Matrix::Zero(4, 2);
    bad(0, 0) = 1.0;
    bad(1, 1) = 0.5;
    CHECK_THROWS(complementary_pair(bad, 2, 2, f));
}
