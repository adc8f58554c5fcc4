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

// Test-only reference implementations. They use different numerical routes
// from the library (general eigensolvers, Schur-Parlett logarithms, SVD,
// explicit summation) so agreement is evidence, not tautology.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Real parts of eigenvalues from the general (non-Hermitian) solver.
inline std::vector<double> eigenvalues(const Matrix &m) {
    Eigen::ComplexEigenSolver<Matrix> es(m);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out.push_back(es.eigenvalues()(i).real());
    }
    return out;
}

inline double entropy(const Matrix &rho) {
    double s = 0.0;
    for (double l : eigenvalues(rho)) {
        if (l > 1e-14) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

inline Matrix log2m(const Matrix &m) {
    return m.log() / std::log(2.0);
}

/// D(rho||sigma) for full-rank sigma. The sigma logarithm is Schur-Parlett,
/// the rho term comes from the general eigensolver.
inline double relative_entropy(const Matrix &rho, const Matrix &sigma) {
    double s_rho = -entropy(rho);
    return s_rho - (rho * log2m(sigma)).trace().real();
}

inline double trace_norm(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

inline double holevo(const std::vector<double> &p,
                     const std::vector<Matrix> &states) {
    Matrix avg = Matrix::Zero(states[0].rows(), states[0].cols());
    double cond = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        avg += p[i] * states[i];
        cond += p[i] * entropy(states[i]);
    }
    return entropy(avg) - cond;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Second largest absolute eigenvalue of a real symmetric matrix, via the
/// self-adjoint solver rather than SVD.
inline double second_abs_eigenvalue(const RealMatrix &p) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(p);
    std::vector<double> a;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        a.push_back(std::abs(es.eigenvalues()(i)));
    }
    std::sort(a.rbegin(), a.rend());
    return a.size() < 2 ? 0.0 : a[1];
}

/// Section matrix rebuilt by a triple loop over (s, x, x').
inline RealMatrix section_matrix(const std::vector<std::size_t> &table,
                                 std::size_t num_seeds, std::size_t num_inputs,
                                 std::size_t m) {
    RealMatrix p = RealMatrix::Zero(static_cast<Eigen::Index>(num_inputs),
                                    static_cast<Eigen::Index>(num_inputs));
    std::size_t d_s = 0;
    for (std::size_t x = 0; x < num_inputs; ++x) {
        d_s += table[x] == m ? 1 : 0;
    }
    std::size_t d_x = 0;
    for (std::size_t s = 0; s < num_seeds; ++s) {
        d_x += table[s * num_inputs] == m ? 1 : 0;
    }
    for (std::size_t s = 0; s < num_seeds; ++s) {
        for (std::size_t x = 0; x < num_inputs; ++x) {
            for (std::size_t y = 0; y < num_inputs; ++y) {
                if (table[s * num_inputs + x] == m &&
                    table[s * num_inputs + y] == m) {
                    p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) +=
                        1.0;
                }
            }
        }
    }
    return p / static_cast<double>(d_s * d_x);
}

} // namespace oracle

namespace oracle {

/// All points of the simplex in k <= 3 coordinates with denominator res.
inline std::vector<std::vector<double>> grid(std::size_t k, std::size_t res) {
    std::vector<std::vector<double>> out;
    const double r = static_cast<double>(res);
    if (k == 1) {
        out.push_back({1.0});
    } else if (k == 2) {
        for (std::size_t i = 0; i <= res; ++i) {
            out.push_back({i / r, (res - i) / r});
        }
    } else {
        for (std::size_t i = 0; i <= res; ++i) {
            for (std::size_t j = 0; i + j <= res; ++j) {
                out.push_back({i / r, j / r, (res - i - j) / r});
            }
        }
    }
    return out;
}

/// Resolution giving at least `points` grid points.
inline std::size_t resolution_for(std::size_t k, std::size_t points) {
    std::size_t res = 1;
    while (grid(k, res).size() < points) {
        ++res;
    }
    return res;
}

} // namespace oracle
