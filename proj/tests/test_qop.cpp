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

#include "cqwiretap/errors.hpp"
#include "cqwiretap/qop.hpp"
#include "cqwiretap/random_instances.hpp"
#include "oracles.hpp"

using namespace cqw;
using Catch::Approx;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

TEST_CASE("operator types reject invalid inputs", "[qop]") {
    Matrix nh = Matrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator(nh), InvalidStateError);
    CHECK_THROWS_AS(DensityOperator(diag2(0.5, 0.6)), InvalidStateError);
    CHECK_THROWS_AS(DensityOperator(diag2(1.2, -0.2)), InvalidStateError);
    // Noise-level negativity is clipped, not rejected.
    CHECK_NOTHROW(DensityOperator(diag2(1.0 + 5e-11, -5e-11)));
    CHECK_THROWS_AS(MeasurementOperator(diag2(1.1, 0.0)), InvalidStateError);
    std::vector<MeasurementOperator> over{MeasurementOperator(diag2(0.7, 0.0)),
                                          MeasurementOperator(diag2(0.7, 0.0))};
    CHECK_THROWS(SubPovm(over));
}

TEST_CASE("entropy examples", "[qop]") {
    CHECK(entropy(basis_state(2, 0)) == Approx(0.0).margin(1e-12));
    CHECK(entropy(maximally_mixed(2)) == Approx(1.0).margin(1e-12));
    const std::vector<double> p{0.75, 0.25};
    const double h = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
    CHECK(entropy(diagonal_state(p)) == Approx(h).margin(1e-12));
    CHECK(h == Approx(0.811278).margin(1e-6));
    CHECK(binary_entropy(0.25) == Approx(h).margin(1e-12));
}

TEST_CASE("entropy matches the general-eigensolver oracle and is unitarily "
          "invariant", "[qop][property]") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const Index d = 2 + static_cast<Index>(rng.uniform_index(3));
        const DensityOperator rho = random_density(rng, d);
        const double s = entropy(rho);
        CHECK(s == Approx(oracle::entropy(rho.matrix())).margin(1e-9));
        CHECK(s >= -1e-12);
        CHECK(s <= std::log2(static_cast<double>(d)) + 1e-12);
        const Matrix u = random_unitary(rng, d);
        const DensityOperator rot(Matrix(u * rho.matrix() * u.adjoint()));
        CHECK(entropy(rot) == Approx(s).margin(1e-9));
    }
}

TEST_CASE("relative entropy examples", "[qop]") {
    const auto rho = maximally_mixed(3);
    CHECK(relative_entropy(rho, rho) == Approx(0.0).margin(1e-12));
    CHECK(relative_entropy(basis_state(2, 0), maximally_mixed(2)) ==
          Approx(1.0).margin(1e-12));
    CHECK(std::isinf(relative_entropy(maximally_mixed(2), basis_state(2, 0))));
    CHECK_THROWS_AS(relative_entropy(maximally_mixed(2), maximally_mixed(3)),
                    DimensionError);
}

TEST_CASE("relative entropy matches the Schur-Parlett oracle", "[qop][property]") {
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        const Index d = 2 + static_cast<Index>(rng.uniform_index(3));
        const DensityOperator rho = random_density(rng, d);
        const DensityOperator sigma = random_density(rng, d);
        const double dv = relative_entropy(rho, sigma);
        CHECK(dv == Approx(oracle::relative_entropy(rho.matrix(), sigma.matrix()))
                        .margin(1e-8));
        CHECK(dv >= -1e-12);
        // Pinsker on state pairs.
        const double tn = trace_norm(rho.op() - sigma.op());
        CHECK(tn * tn <= 2.0 * std::log(2.0) * dv + 1e-9);
    }
}

TEST_CASE("Renyi relative entropy", "[qop]") {
    CHECK(renyi_relative_entropy(2.0, maximally_mixed(2), maximally_mixed(2)) ==
          Approx(0.0).margin(1e-12));
    CHECK(renyi_relative_entropy(2.0, basis_state(2, 0), maximally_mixed(2)) ==
          Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(renyi_relative_entropy(1.0, maximally_mixed(2),
                                           maximally_mixed(2)),
                    DomainError);
    CHECK(std::isinf(
        renyi_relative_entropy(2.0, maximally_mixed(2), basis_state(2, 0))));

    Rng rng(13);
    const std::vector<double> alphas{0.5, 0.9, 1.1, 2.0};
    for (int t = 0; t < 50; ++t) {
        const DensityOperator rho = random_density(rng, 3);
        const DensityOperator sigma = random_density(rng, 3);
        const double d1 = relative_entropy(rho, sigma);
        std::vector<double> vals;
        for (double a : alphas) {
            vals.push_back(renyi_relative_entropy(a, rho, sigma));
        }
        CHECK(vals[0] <= vals[1] + 1e-9);
        CHECK(vals[1] <= d1 + 1e-9);
        CHECK(d1 <= vals[2] + 1e-9);
        CHECK(vals[2] <= vals[3] + 1e-9);
        // D2 = log2 tr(rho^2 sigma^-1)
        CHECK(vals[3] ==
              Approx(std::log2(exp2_renyi2(rho, sigma))).margin(1e-9));
    }
}

TEST_CASE("norms, ranks and supports", "[qop]") {
    const auto z = basis_state(2, 0);
    const auto o = basis_state(2, 1);
    CHECK(trace_norm(z.op() - z.op()) == Approx(0.0).margin(1e-14));
    CHECK(trace_norm(z.op() - o.op()) == Approx(2.0).margin(1e-12));
    CHECK(operator_norm(HermitianOperator(Matrix::Identity(3, 3))) ==
          Approx(1.0).margin(1e-14));
    CHECK(rank_eps(z) == 1);
    CHECK(support_leq(z, maximally_mixed(2)));
    CHECK_FALSE(support_leq(maximally_mixed(2), z));

    Rng rng(14);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_density(rng, 4);
        const auto b = random_density(rng, 4);
        const HermitianOperator diff = a.op() - b.op();
        CHECK(trace_norm(diff) ==
              Approx(oracle::trace_norm(diff.matrix())).margin(1e-10));
    }
}

TEST_CASE("tensor and partial trace", "[qop]") {
    Rng rng(15);
    const auto a = random_density(rng, 2);
    const auto b = random_density(rng, 3);
    const Matrix ab = kron(a.matrix(), b.matrix());
    CHECK((ab - oracle::kron(a.matrix(), b.matrix())).norm() < 1e-14);
    CHECK((partial_trace(ab, 2, 3, Subsystem::Second) - a.matrix()).norm() < 1e-12);
    CHECK((partial_trace(ab, 2, 3, Subsystem::First) - b.matrix()).norm() < 1e-12);
}

TEST_CASE("matrix functions", "[qop]") {
    Rng rng(16);
    const auto rho = random_density(rng, 3, 2);
    const HermitianOperator pinv = pseudo_inverse(rho);
    const Matrix p = support_projector(rho).matrix();
    CHECK((rho.matrix() * pinv.matrix() - p).norm() < 1e-8);
    CHECK(rank_eps(support_projector(rho)) == 2);
    const auto sq = matrix_function(rho, [](double x) { return std::sqrt(x); });
    CHECK((sq.matrix() * sq.matrix() - rho.matrix()).norm() < 1e-10);
}
