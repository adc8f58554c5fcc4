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
 * Dense finite-dimensional operator core: Hermitian / PSD operators, density
 * operators, measurement operators and sub-POVMs, together with entropies,
 * divergences, norms and support tests.
 *
 * All logarithms are base 2. Matrix functions go through a full Hermitian
 * eigendecomposition. An eigenvalue belongs to the support when it exceeds
 * `tol::support_relative` times the largest eigenvalue magnitude.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cqw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace tol {
/// Max absolute entry of A - A^* accepted as Hermitian.
inline constexpr double hermitian = 1e-10;
/// Eigenvalues in [-negative_eigenvalue, 0) are clipped to zero.
inline constexpr double negative_eigenvalue = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double sub_povm = 1e-9;
inline constexpr double support_relative = 1e-12;
/// Squared overlap with a kernel above which a support inclusion fails.
inline constexpr double support_leak = 1e-8;
/// Slack accepted by every certified inequality.
inline constexpr double bound = 1e-9;
} // namespace tol

class HermitianOperator {
  public:
    HermitianOperator() = default;

    /// Throws InvalidStateError if `m` is not square or not Hermitian.
    explicit HermitianOperator(Matrix m);

    /// Skips validation; the stored matrix is symmetrized.
    static HermitianOperator assume_hermitian(Matrix m);

    [[nodiscard]] Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] double trace() const { return m_.trace().real(); }

  private:
    struct Trusted {};
    HermitianOperator(Matrix m, Trusted);
    Matrix m_;
};

HermitianOperator operator+(const HermitianOperator &a,
                            const HermitianOperator &b);
HermitianOperator operator-(const HermitianOperator &a,
                            const HermitianOperator &b);
HermitianOperator operator*(double s, const HermitianOperator &a);

/// Positive semidefinite unit-trace operator.
class DensityOperator {
  public:
    DensityOperator() = default;
    explicit DensityOperator(HermitianOperator op);
    explicit DensityOperator(Matrix m)
        : DensityOperator(HermitianOperator(std::move(m))) {}

    /// For convex mixtures and tensor products of valid states.
    static DensityOperator assume_valid(HermitianOperator op);

    [[nodiscard]] const HermitianOperator &op() const noexcept { return op_; }
    [[nodiscard]] const Matrix &matrix() const noexcept {
        return op_.matrix();
    }
    [[nodiscard]] Index dim() const noexcept { return op_.dim(); }

    operator const HermitianOperator &() const noexcept { return op_; }

  private:
    HermitianOperator op_;
};

/// Operator D with 0 <= D <= identity.
class MeasurementOperator {
  public:
    MeasurementOperator() = default;
    explicit MeasurementOperator(HermitianOperator op);
    explicit MeasurementOperator(Matrix m)
        : MeasurementOperator(HermitianOperator(std::move(m))) {}

    static MeasurementOperator assume_valid(HermitianOperator op);

    [[nodiscard]] const HermitianOperator &op() const noexcept { return op_; }
    [[nodiscard]] const Matrix &matrix() const noexcept {
        return op_.matrix();
    }
    [[nodiscard]] Index dim() const noexcept { return op_.dim(); }

    operator const HermitianOperator &() const noexcept { return op_; }

  private:
    HermitianOperator op_;
};

/// Measurement operators indexed by message, summing to at most identity.
class SubPovm {
  public:
    SubPovm() = default;
    explicit SubPovm(std::vector<MeasurementOperator> elements);

    [[nodiscard]] std::size_t size() const noexcept {
        return elements_.size();
    }
    [[nodiscard]] Index dim() const noexcept {
        return elements_.empty() ? 0 : elements_.front().dim();
    }
    [[nodiscard]] const MeasurementOperator &
    operator[](std::size_t i) const {
        return elements_.at(i);
    }
    [[nodiscard]] const std::vector<MeasurementOperator> &
    elements() const noexcept {
        return elements_;
    }

  private:
    std::vector<MeasurementOperator> elements_;
};

/// Eigendecomposition with ascending eigenvalues and eigenvector columns.
struct Spectrum {
    RealVector values;
    Matrix vectors;
};

[[nodiscard]] Spectrum eigh(const HermitianOperator &a);

/// Eigenvalues of a PSD operator with tiny negatives clipped to zero.
[[nodiscard]] RealVector psd_eigenvalues(const HermitianOperator &a);

/// Support cutoff for a list of eigenvalues.
[[nodiscard]] double support_threshold(const RealVector &eigenvalues);

[[nodiscard]] double binary_entropy(double p);

/// -sum p log2 p over a nonnegative vector (0 log 0 = 0).
[[nodiscard]] double shannon_entropy(std::span<const double> p);

[[nodiscard]] double entropy(const DensityOperator &rho);

/// -tr(A log2 A) for any PSD operator, normalized or not.
[[nodiscard]] double entropy_psd(const HermitianOperator &a);

/**
 * D(rho||sigma) = tr rho (log2 rho - log2 sigma) for PSD arguments of equal
 * dimension. Returns kInfinity when supp(rho) is not contained in
 * supp(sigma). Neither argument needs unit trace.
 */
[[nodiscard]] double relative_entropy(const HermitianOperator &rho,
                                      const HermitianOperator &sigma);

/**
 * Petz-Renyi divergence (1/(alpha-1)) log2 tr(rho^alpha sigma^(1-alpha)),
 * with negative powers of sigma taken on its support. Throws DomainError for
 * alpha <= 0 or alpha == 1.
 */
[[nodiscard]] double renyi_relative_entropy(double alpha,
                                            const HermitianOperator &rho,
                                            const HermitianOperator &sigma);

/// tr(rho^2 sigma^{-1}) with the pseudo-inverse; kInfinity on support
/// violation. Equals 2^{D_2} in the unnormalized convention.
[[nodiscard]] double exp2_renyi2(const HermitianOperator &rho,
                                 const HermitianOperator &sigma);

[[nodiscard]] double trace_norm(const HermitianOperator &a);
[[nodiscard]] double operator_norm(const HermitianOperator &a);
[[nodiscard]] std::size_t rank_eps(const HermitianOperator &a);
[[nodiscard]] bool support_leq(const HermitianOperator &a,
                               const HermitianOperator &b);
[[nodiscard]] double min_eigenvalue(const HermitianOperator &a);

/// a <= b in the PSD order, up to `slack` on the smallest eigenvalue.
[[nodiscard]] bool psd_leq(const HermitianOperator &a,
                           const HermitianOperator &b,
                           double slack = tol::negative_eigenvalue);

/// f applied to the eigenvalues of a.
[[nodiscard]] HermitianOperator
matrix_function(const HermitianOperator &a,
                const std::function<double(double)> &f);

/// Moore-Penrose inverse restricted to the support.
[[nodiscard]] HermitianOperator pseudo_inverse(const HermitianOperator &a);

/// Orthogonal projector onto the support.
[[nodiscard]] HermitianOperator support_projector(const HermitianOperator &a);

[[nodiscard]] Matrix kron(const Matrix &a, const Matrix &b);

enum class Subsystem { First, Second };

/// Traces out `traced` from an operator on C^{dim_first} (x) C^{dim_second}.
[[nodiscard]] Matrix partial_trace(const Matrix &m, Index dim_first,
                                   Index dim_second, Subsystem traced);

[[nodiscard]] DensityOperator maximally_mixed(Index dim);
[[nodiscard]] DensityOperator basis_state(Index dim, Index k);
[[nodiscard]] DensityOperator pure_state(const ComplexVector &psi);
[[nodiscard]] DensityOperator diagonal_state(std::span<const double> p);

/// Block-diagonal classical-quantum operator sum_x w_x |x><x| (x) A_x.
[[nodiscard]] HermitianOperator
classical_quantum(std::span<const double> weights,
                  std::span<const HermitianOperator> blocks);

} // namespace cqw
