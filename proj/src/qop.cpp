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

#include "cqwiretap/qop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

double max_abs_deviation(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_same_dim(const HermitianOperator &a, const HermitianOperator &b,
                      const char *what) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a.dim() << " vs "
           << b.dim() << ")";
        throw DimensionError(os.str());
    }
}

RealVector clip_psd(RealVector values, const char *what) {
    for (auto &v : values) {
        if (v < -tol::negative_eigenvalue) {
            std::ostringstream os;
            os << what << ": operator is not positive semidefinite "
               << "(eigenvalue " << v << ")";
            throw InvalidStateError(os.str());
        }
        v = std::max(v, 0.0);
    }
    return values;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Clipped spectrum of a PSD operator together with its eigenvectors.
Spectrum psd_spectrum(const HermitianOperator &a, const char *what) {
    Spectrum s = eigh(a);
    s.values = clip_psd(std::move(s.values), what);
    return s;
}

/// Indices of eigenvalues in the support.
std::vector<Index> support_indices(const RealVector &values) {
    const double thr = support_threshold(values);
    std::vector<Index> idx;
    for (Index i = 0; i < values.size(); ++i) {
        if (std::abs(values(i)) > thr) {
            idx.push_back(i);
        }
    }
    return idx;
}

/**
 * Squared overlaps |<u_i|v_j>|^2 between the eigenvectors of two operators,
 * plus a flag telling whether the support of the first leaks into the
 * kernel of the second.
 */
struct Overlap {
    RealMatrix weights;
    bool leaks = false;
};

Overlap overlap(const Spectrum &rho, const std::vector<Index> &rho_support,
                const Spectrum &sigma,
                const std::vector<Index> &sigma_support) {
    Overlap o;
    o.weights = (rho.vectors.adjoint() * sigma.vectors).cwiseAbs2();
    std::vector<bool> in_sigma(static_cast<std::size_t>(sigma.values.size()),
                               false);
    for (Index j : sigma_support) {
        in_sigma[static_cast<std::size_t>(j)] = true;
    }
    for (Index i : rho_support) {
        double leak = 0.0;
        for (Index j = 0; j < sigma.values.size(); ++j) {
            if (!in_sigma[static_cast<std::size_t>(j)]) {
                leak += o.weights(i, j);
            }
        }
        if (leak > tol::support_leak) {
            o.leaks = true;
            break;
        }
    }
    return o;
}

} // namespace

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidStateError("operator matrix is not square");
    }
    if (m_.size() > 0 && max_abs_deviation(m_) > tol::hermitian) {
        std::ostringstream os;
        os << "operator is not Hermitian (max |A - A*| = "
           << max_abs_deviation(m_) << ")";
        throw InvalidStateError(os.str());
    }
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianOperator::HermitianOperator(Matrix m, Trusted) : m_(std::move(m)) {
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianOperator HermitianOperator::assume_hermitian(Matrix m) {
    return {std::move(m), Trusted{}};
}

HermitianOperator operator+(const HermitianOperator &a,
                            const HermitianOperator &b) {
    require_same_dim(a, b, "operator+");
    return HermitianOperator::assume_hermitian(a.matrix() + b.matrix());
}

HermitianOperator operator-(const HermitianOperator &a,
                            const HermitianOperator &b) {
    require_same_dim(a, b, "operator-");
    return HermitianOperator::assume_hermitian(a.matrix() - b.matrix());
}

HermitianOperator operator*(double s, const HermitianOperator &a) {
    return HermitianOperator::assume_hermitian(s * a.matrix());
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
    if (op_.dim() == 0) {
        throw InvalidStateError("density operator has dimension 0");
    }
    (void)clip_psd(eigh(op_).values, "density operator");
    if (std::abs(op_.trace() - 1.0) > tol::trace) {
        std::ostringstream os;
        os << "density operator trace " << op_.trace() << " differs from 1";
        throw InvalidStateError(os.str());
    }
}

DensityOperator DensityOperator::assume_valid(HermitianOperator op) {
    DensityOperator d;
    d.op_ = std::move(op);
    return d;
}

MeasurementOperator::MeasurementOperator(HermitianOperator op)
    : op_(std::move(op)) {
    const RealVector ev = eigh(op_).values;
    if (ev.size() > 0 && (ev.minCoeff() < -tol::negative_eigenvalue ||
                          ev.maxCoeff() > 1.0 + tol::negative_eigenvalue)) {
        std::ostringstream os;
        os << "measurement operator eigenvalues outside [0, 1] (min "
           << ev.minCoeff() << ", max " << ev.maxCoeff() << ")";
        throw InvalidStateError(os.str());
    }
}

MeasurementOperator MeasurementOperator::assume_valid(HermitianOperator op) {
    MeasurementOperator d;
    d.op_ = std::move(op);
    return d;
}

SubPovm::SubPovm(std::vector<MeasurementOperator> elements)
    : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw ValidationError("sub-POVM needs at least one element");
    }
    const Index d = elements_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &e : elements_) {
        if (e.dim() != d) {
            throw DimensionError("sub-POVM elements differ in dimension");
        }
        sum += e.matrix();
    }
    const HermitianOperator deficit = HermitianOperator::assume_hermitian(
        Matrix::Identity(d, d) - sum);
    const double lo = min_eigenvalue(deficit);
    if (lo < -tol::sub_povm) {
        std::ostringstream os;
        os << "sub-POVM elements sum above identity (min eigenvalue of "
           << "I - sum = " << lo << ")";
        throw InvalidStateError(os.str());
    }
}

Spectrum eigh(const HermitianOperator &a) {
    if (a.dim() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw InvalidStateError("Hermitian eigendecomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector psd_eigenvalues(const HermitianOperator &a) {
    return clip_psd(eigh(a).values, "psd_eigenvalues");
}

double support_threshold(const RealVector &eigenvalues) {
    if (eigenvalues.size() == 0) {
        return 0.0;
    }
    return tol::support_relative * eigenvalues.cwiseAbs().maxCoeff();
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) {
        throw DomainError("binary_entropy: argument outside [0, 1]");
    }
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        h -= xlog2x(v);
    }
    return h;
}

double entropy(const DensityOperator &rho) { return entropy_psd(rho.op()); }

double entropy_psd(const HermitianOperator &a) {
    const RealVector ev = psd_eigenvalues(a);
    double h = 0.0;
    for (double v : ev) {
        h -= xlog2x(v);
    }
    return h;
}

double relative_entropy(const HermitianOperator &rho,
                        const HermitianOperator &sigma) {
    require_same_dim(rho, sigma, "relative_entropy");
    const Spectrum r = psd_spectrum(rho, "relative_entropy(rho)");
    const Spectrum s = psd_spectrum(sigma, "relative_entropy(sigma)");
    const auto r_supp = support_indices(r.values);
    const auto s_supp = support_indices(s.values);
    const Overlap o = overlap(r, r_supp, s, s_supp);
    if (o.leaks) {
        return kInfinity;
    }
    double d = 0.0;
    for (Index i : r_supp) {
        const double ri = r.values(i);
        double cross = 0.0;
        for (Index j : s_supp) {
            cross += o.weights(i, j) * std::log2(s.values(j));
        }
        d += ri * std::log2(ri) - ri * cross;
    }
    return d;
}

namespace {

/// tr(rho^alpha sigma^(1-alpha)) on supports, or kInfinity on leakage.
double renyi_trace(double alpha, const HermitianOperator &rho,
                   const HermitianOperator &sigma) {
    require_same_dim(rho, sigma, "renyi_relative_entropy");
    const Spectrum r = psd_spectrum(rho, "renyi(rho)");
    const Spectrum s = psd_spectrum(sigma, "renyi(sigma)");
    const auto r_supp = support_indices(r.values);
    const auto s_supp = support_indices(s.values);
    const Overlap o = overlap(r, r_supp, s, s_supp);
    if (o.leaks) {
        return kInfinity;
    }
    double q = 0.0;
    for (Index i : r_supp) {
        const double ra = std::pow(r.values(i), alpha);
        for (Index j : s_supp) {
            q += ra * std::pow(s.values(j), 1.0 - alpha) * o.weights(i, j);
        }
    }
    return q;
}

} // namespace

double renyi_relative_entropy(double alpha, const HermitianOperator &rho,
                              const HermitianOperator &sigma) {
    if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
        throw DomainError("renyi_relative_entropy: alpha must lie in "
                          "(0,1) or (1,inf); use relative_entropy at 1");
    }
    const double q = renyi_trace(alpha, rho, sigma);
    if (std::isinf(q)) {
        return kInfinity;
    }
    return std::log2(q) / (alpha - 1.0);
}

double exp2_renyi2(const HermitianOperator &rho,
                   const HermitianOperator &sigma) {
    return renyi_trace(2.0, rho, sigma);
}

double trace_norm(const HermitianOperator &a) {
    return eigh(a).values.cwiseAbs().sum();
}

double operator_norm(const HermitianOperator &a) {
    if (a.dim() == 0) {
        return 0.0;
    }
    return eigh(a).values.cwiseAbs().maxCoeff();
}

std::size_t rank_eps(const HermitianOperator &a) {
    return support_indices(eigh(a).values).size();
}

bool support_leq(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a, b, "support_leq");
    const Spectrum sa = eigh(a);
    const Spectrum sb = eigh(b);
    return !overlap(sa, support_indices(sa.values), sb,
                    support_indices(sb.values))
                .leaks;
}

double min_eigenvalue(const HermitianOperator &a) {
    if (a.dim() == 0) {
        return 0.0;
    }
    return eigh(a).values.minCoeff();
}

bool psd_leq(const HermitianOperator &a, const HermitianOperator &b,
             double slack) {
    return min_eigenvalue(b - a) >= -slack;
}

HermitianOperator matrix_function(const HermitianOperator &a,
                                  const std::function<double(double)> &f) {
    const Spectrum s = eigh(a);
    RealVector fv(s.values.size());
    for (Index i = 0; i < fv.size(); ++i) {
        fv(i) = f(s.values(i));
    }
    return HermitianOperator::assume_hermitian(
        s.vectors * fv.cast<Complex>().asDiagonal() * s.vectors.adjoint());
}

HermitianOperator pseudo_inverse(const HermitianOperator &a) {
    const Spectrum s = eigh(a);
    const double thr = support_threshold(s.values);
    RealVector inv = RealVector::Zero(s.values.size());
    for (Index i = 0; i < inv.size(); ++i) {
        if (std::abs(s.values(i)) > thr) {
            inv(i) = 1.0 / s.values(i);
        }
    }
    return HermitianOperator::assume_hermitian(
        s.vectors * inv.cast<Complex>().asDiagonal() * s.vectors.adjoint());
}

HermitianOperator support_projector(const HermitianOperator &a) {
    const Spectrum s = eigh(a);
    const double thr = support_threshold(s.values);
    RealVector ind = RealVector::Zero(s.values.size());
    for (Index i = 0; i < ind.size(); ++i) {
        ind(i) = std::abs(s.values(i)) > thr ? 1.0 : 0.0;
    }
    return HermitianOperator::assume_hermitian(
        s.vectors * ind.cast<Complex>().asDiagonal() * s.vectors.adjoint());
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &m, Index dim_first, Index dim_second,
                     Subsystem traced) {
    if (m.rows() != dim_first * dim_second || m.cols() != m.rows()) {
        throw DimensionError("partial_trace: matrix does not match the "
                             "subsystem dimensions");
    }
    if (traced == Subsystem::Second) {
        Matrix out = Matrix::Zero(dim_first, dim_first);
        for (Index i = 0; i < dim_first; ++i) {
            for (Index j = 0; j < dim_first; ++j) {
                out(i, j) = m.block(i * dim_second, j * dim_second,
                                    dim_second, dim_second)
                                .trace();
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(dim_second, dim_second);
    for (Index i = 0; i < dim_first; ++i) {
        out += m.block(i * dim_second, i * dim_second, dim_second,
                       dim_second);
    }
    return out;
}

DensityOperator maximally_mixed(Index dim) {
    if (dim <= 0) {
        throw DomainError("maximally_mixed: dimension must be positive");
    }
    return DensityOperator::assume_valid(HermitianOperator::assume_hermitian(
        Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityOperator basis_state(Index dim, Index k) {
    if (k < 0 || k >= dim) {
        throw DomainError("basis_state: index outside the dimension");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(m)));
}

DensityOperator pure_state(const ComplexVector &psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
        throw DomainError("pure_state: zero vector");
    }
    const ComplexVector u = psi / norm;
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(u * u.adjoint()));
}

DensityOperator diagonal_state(std::span<const double> p) {
    RealVector v(static_cast<Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        v(static_cast<Index>(i)) = p[i];
    }
    return DensityOperator(Matrix(v.cast<Complex>().asDiagonal()));
}

HermitianOperator classical_quantum(std::span<const double> weights,
                                    std::span<const HermitianOperator> blocks) {
    if (weights.size() != blocks.size() || blocks.empty()) {
        throw DimensionError("classical_quantum: weights and blocks differ "
                             "in length");
    }
    const Index d = blocks.front().dim();
    const Index k = static_cast<Index>(blocks.size());
    Matrix m = Matrix::Zero(k * d, k * d);
    for (Index x = 0; x < k; ++x) {
        const auto &b = blocks[static_cast<std::size_t>(x)];
        if (b.dim() != d) {
            throw DimensionError("classical_quantum: blocks differ in "
                                 "dimension");
        }
        m.block(x * d, x * d, d, d) =
            weights[static_cast<std::size_t>(x)] * b.matrix();
    }
    return HermitianOperator::assume_hermitian(std::move(m));
}

} // namespace cqw
