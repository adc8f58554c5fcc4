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

#include "cqwiretap/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

Matrix ginibre(Rng &rng, Index rows, Index cols) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

} // namespace

ComplexVector random_complex_vector(Rng &rng, Index dim) {
    return ginibre(rng, dim, 1).col(0);
}

Matrix random_isometry(Rng &rng, Index rows, Index cols) {
    if (rows < cols || cols < 1) {
        throw DimensionError("random_isometry: need rows >= cols >= 1");
    }
    const Matrix g = ginibre(rng, rows, cols);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR();
    for (Index j = 0; j < cols; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

Matrix random_unitary(Rng &rng, Index dim) {
    return random_isometry(rng, dim, dim);
}

DensityOperator random_density(Rng &rng, Index dim, Index rank) {
    if (rank <= 0 || rank > dim) {
        rank = dim;
    }
    const Matrix g = ginibre(rng, dim, rank);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(std::move(rho));
}

std::vector<double> random_distribution(Rng &rng, std::size_t k) {
    return rng.simplex_point(k);
}

CqChannel random_channel(Rng &rng, std::size_t inputs, Index dim) {
    std::vector<DensityOperator> outs;
    for (std::size_t x = 0; x < inputs; ++x) {
        const auto rank = static_cast<Index>(rng.uniform_index(
                              static_cast<std::uint64_t>(dim))) +
                          1;
        outs.push_back(random_density(rng, dim, rank));
    }
    return CqChannel(std::move(outs));
}

CqChannel random_classical_outputs(Rng &rng, std::size_t inputs, Index dim) {
    std::vector<DensityOperator> outs;
    for (std::size_t x = 0; x < inputs; ++x) {
        const auto p = rng.simplex_point(static_cast<std::size_t>(dim));
        outs.push_back(diagonal_state(p));
    }
    return CqChannel(std::move(outs));
}

ClassicalChannel random_stochastic(Rng &rng, std::size_t rows,
                                   std::size_t cols) {
    RealMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const auto p = rng.simplex_point(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Index>(i), static_cast<Index>(j)) = p[j];
        }
    }
    return ClassicalChannel::from_dense(m);
}

std::vector<std::size_t> random_permutation(Rng &rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

BriFunction random_bri(Rng &rng, std::size_t num_inputs, std::size_t d_s,
                       std::size_t repeats) {
    if (d_s == 0 || num_inputs % d_s != 0 || repeats == 0) {
        throw DomainError("random_bri: d_s must divide |X| and repeats >= 1");
    }
    const std::size_t outputs = num_inputs / d_s;
    const auto tau = random_permutation(rng, num_inputs);
    const auto relabel = random_permutation(rng, outputs);
    const auto seeds = random_permutation(rng, num_inputs * repeats);
    BriTable t;
    t.num_seeds = num_inputs * repeats;
    t.num_inputs = num_inputs;
    t.num_outputs = outputs;
    t.values.resize(t.num_seeds * num_inputs);
    for (std::size_t s = 0; s < t.num_seeds; ++s) {
        const std::size_t shift = seeds[s] % num_inputs;
        for (std::size_t x = 0; x < num_inputs; ++x) {
            t.values[s * num_inputs + x] =
                relabel[((tau[x] + shift) % num_inputs) / d_s];
        }
    }
    std::vector<std::size_t> regularity(outputs);
    std::iota(regularity.begin(), regularity.end(), 0);
    return BriFunction(std::move(t), std::move(regularity));
}

} // namespace cqw
