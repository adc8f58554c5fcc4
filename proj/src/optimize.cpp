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

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/errors.hpp"
#include "cqwiretap/rng.hpp"

namespace cqw {

namespace {

/// Ensemble {rho_m} with cached entropies; evaluates chi(p) and the
/// divergences D(rho_m || rho_p) used by multiplicative ascent.
class Ensemble {
  public:
    explicit Ensemble(const CqChannel &c) : dim_(c.dim()) {
        for (const auto &o : c.outputs()) {
            states_.push_back(o.matrix());
            entropies_.push_back(entropy(o));
        }
    }

    [[nodiscard]] std::size_t size() const { return states_.size(); }

    [[nodiscard]] Matrix mixture(std::span<const double> p) const {
        Matrix acc = Matrix::Zero(dim_, dim_);
        for (std::size_t m = 0; m < states_.size(); ++m) {
            if (p[m] != 0.0) {
                acc += p[m] * states_[m];
            }
        }
        return acc;
    }

    /// S(sum_m p_m rho_m) - sum_m p_m S(rho_m); p need not be normalized.
    [[nodiscard]] double value(std::span<const double> p) const {
        double cond = 0.0;
        for (std::size_t m = 0; m < states_.size(); ++m) {
            cond += p[m] * entropies_[m];
        }
        return entropy_psd(HermitianOperator::assume_hermitian(mixture(p))) -
               cond;
    }

    /// D(rho_m || rho_p) for every m with p_m > 0 (others set to 0).
    [[nodiscard]] std::vector<double>
    divergences(std::span<const double> p) const {
        const Spectrum s =
            eigh(HermitianOperator::assume_hermitian(mixture(p)));
        const double thr = support_threshold(s.values);
        RealVector logs = RealVector::Zero(s.values.size());
        for (Index j = 0; j < logs.size(); ++j) {
            if (s.values(j) > thr) {
                logs(j) = std::log2(s.values(j));
            }
        }
        std::vector<double> d(states_.size(), 0.0);
        for (std::size_t m = 0; m < states_.size(); ++m) {
            if (p[m] <= 0.0) {
                continue;
            }
            const RealVector diag =
                (s.vectors.adjoint() * states_[m] * s.vectors)
                    .diagonal()
                    .real();
            d[m] = -entropies_[m] - diag.dot(logs);
        }
        return d;
    }

  private:
    Index dim_;
    std::vector<Matrix> states_;
    std::vector<double> entropies_;
};

double mean_value(const std::vector<Ensemble> &es, std::span<const double> p) {
    double v = 0.0;
    for (const auto &e : es) {
        v += e.value(p);
    }
    return v / static_cast<double>(es.size());
}

OptimizationResult ascend(const std::vector<Ensemble> &es,
                          std::vector<double> p, const AscentOptions &opts) {
    const std::size_t k = p.size();
    OptimizationResult r;
    double f = mean_value(es, p);
    double eta = 1.0;
    std::deque<double> history{f};
    for (r.iterations = 0; r.iterations < opts.max_iters; ++r.iterations) {
        std::vector<double> g(k, 0.0);
        for (const auto &e : es) {
            const auto d = e.divergences(p);
            for (std::size_t m = 0; m < k; ++m) {
                g[m] += d[m] / static_cast<double>(es.size());
            }
        }
        const double gmax = *std::max_element(g.begin(), g.end());
        bool accepted = false;
        while (eta > 1e-12) {
            std::vector<double> q(k);
            double z = 0.0;
            for (std::size_t m = 0; m < k; ++m) {
                q[m] = p[m] * std::exp2(eta * (g[m] - gmax));
                z += q[m];
            }
            for (auto &v : q) {
                v /= z;
            }
            const double fq = mean_value(es, q);
            if (fq >= f) {
                p = std::move(q);
                f = fq;
                accepted = true;
                eta = std::min(eta * 1.25, 8.0);
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) {
            r.converged = true;
            break;
        }
        history.push_back(f);
        if (static_cast<int>(history.size()) > opts.window) {
            if (history.back() - history.front() < opts.tol) {
                r.converged = true;
                break;
            }
            history.pop_front();
        }
    }
    r.value = f;
    r.argmax = std::move(p);
    return r;
}

std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumulative += u[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            theta = t;
        }
    }
    for (auto &x : v) {
        x = std::max(x - theta, 0.0);
    }
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto &x : v) {
        x /= total;
    }
    return v;
}

/// chi(P;W) - chi(P;V) extended to nonnegative unnormalized P.
class WiretapObjective {
  public:
    WiretapObjective(const CqChannel &w, const CqChannel &v) : w_(w), v_(v) {}

    [[nodiscard]] double operator()(std::span<const double> p) const {
        return w_.value(p) - v_.value(p);
    }

    [[nodiscard]] std::vector<double> gradient(std::span<const double> p,
                                               double h) const {
        std::vector<double> g(p.size());
        std::vector<double> q(p.begin(), p.end());
        const double f0 = (*this)(p);
        for (std::size_t x = 0; x < p.size(); ++x) {
            q[x] = p[x] + h;
            const double up = (*this)(q);
            if (p[x] >= h) {
                q[x] = p[x] - h;
                g[x] = (up - (*this)(q)) / (2.0 * h);
            } else {
                g[x] = (up - f0) / h;
            }
            q[x] = p[x];
        }
        return g;
    }

  private:
    Ensemble w_;
    Ensemble v_;
};

OptimizationResult projected_ascent(const WiretapObjective &obj,
                                    std::vector<double> p,
                                    const CapacityOptions &opts) {
    OptimizationResult r;
    double f = obj(p);
    double t = 1.0;
    int stalled = 0;
    for (r.iterations = 0; r.iterations < opts.max_iters; ++r.iterations) {
        const auto g = obj.gradient(p, opts.gradient_step);
        bool accepted = false;
        std::vector<double> q;
        double fq = f;
        while (t > 1e-14) {
            std::vector<double> trial(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                trial[i] = p[i] + t * g[i];
            }
            q = project_simplex(std::move(trial));
            double ascent = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                ascent += g[i] * (q[i] - p[i]);
            }
            fq = obj(q);
            if (fq >= f + 1e-4 * ascent && fq >= f) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            r.converged = true;
            break;
        }
        stalled = (fq - f < 1e-13) ? stalled + 1 : 0;
        p = std::move(q);
        f = fq;
        t = std::min(t * 2.0, 1e3);
        if (stalled >= 50) {
            r.converged = true;
            break;
        }
    }
    r.value = f;
    r.argmax = std::move(p);
    return r;
}

bool better(const OptimizationResult &a, const OptimizationResult &b) {
    return a.value > b.value;
}

} // namespace

std::size_t grid_resolution(std::size_t k, std::size_t points) {
    if (k <= 1) {
        return 1;
    }
    for (std::size_t res = 1;; ++res) {
        // C(res + k - 1, k - 1)
        double count = 1.0;
        for (std::size_t i = 1; i < k; ++i) {
            count = count * static_cast<double>(res + i) /
                    static_cast<double>(i);
        }
        if (count >= static_cast<double>(points)) {
            return res;
        }
    }
}

std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t res) {
    std::vector<std::vector<double>> out;
    if (k == 0) {
        return out;
    }
    std::vector<std::size_t> parts(k, 0);
    auto rec = [&](auto &&self, std::size_t i, std::size_t remaining) -> void {
        if (i + 1 == k) {
            parts[i] = remaining;
            std::vector<double> p(k);
            for (std::size_t j = 0; j < k; ++j) {
                p[j] = static_cast<double>(parts[j]) / static_cast<double>(res);
            }
            out.push_back(std::move(p));
            return;
        }
        for (std::size_t a = 0; a <= remaining; ++a) {
            parts[i] = a;
            self(self, i + 1, remaining - a);
        }
    };
    rec(rec, 0, res);
    return out;
}

OptimizationResult adversarial_leakage(std::span<const CqChannel> composed,
                                       const AscentOptions &opts) {
    if (composed.empty()) {
        throw ValidationError("adversarial_leakage: no seeds");
    }
    std::vector<Ensemble> es;
    for (const auto &c : composed) {
        if (c.size() != composed.front().size()) {
            throw ValidationError("adversarial_leakage: seeds disagree on "
                                  "the message set");
        }
        es.emplace_back(c);
    }
    const std::size_t k = composed.front().size();
    Rng rng(opts.seed, 0x1eaf);
    OptimizationResult best =
        ascend(es, std::vector<double>(k, 1.0 / static_cast<double>(k)), opts);
    for (int r = 0; r < opts.restarts; ++r) {
        Rng stream = rng.split(static_cast<std::uint64_t>(r));
        auto candidate = ascend(es, stream.simplex_point(k), opts);
        if (better(candidate, best)) {
            best = std::move(candidate);
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

OptimizationResult adversarial_leakage(std::span<const ClassicalChannel> encoders,
                                       const TensorPowerChannel &v_n,
                                       const AscentOptions &opts) {
    std::vector<CqChannel> composed;
    for (const auto &e : encoders) {
        composed.push_back(compose(e, v_n));
    }
    return adversarial_leakage(composed, opts);
}

OptimizationResult capacity_single_letter(const CqChannel &w,
                                          const CqChannel &v,
                                          const CapacityOptions &opts) {
    if (w.size() != v.size()) {
        throw ValidationError("capacity: W and V have different alphabets");
    }
    const WiretapObjective obj(w, v);
    const std::size_t k = w.size();
    Rng rng(opts.seed, 0xca9);
    OptimizationResult best = projected_ascent(
        obj, std::vector<double>(k, 1.0 / static_cast<double>(k)), opts);
    for (int r = 0; r < opts.random_starts; ++r) {
        Rng stream = rng.split(static_cast<std::uint64_t>(r));
        auto candidate = projected_ascent(obj, stream.simplex_point(k), opts);
        if (better(candidate, best)) {
            best = std::move(candidate);
        }
    }
    if (k <= opts.grid_max_alphabet) {
        const auto grid = simplex_grid(k, grid_resolution(k, opts.grid_points));
        std::size_t arg = 0;
        double top = -kInfinity;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double f = obj(grid[i]);
            if (f > top) {
                top = f;
                arg = i;
            }
        }
        auto polished = projected_ascent(obj, grid[arg], opts);
        if (better(polished, best)) {
            best = std::move(polished);
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

OptimizationResult capacity_lower_bound(const CqChannel &w, const CqChannel &v,
                                        unsigned n,
                                        const CapacityOptions &opts,
                                        Caps caps) {
    if (w.size() != v.size()) {
        throw ValidationError("capacity: W and V have different alphabets");
    }
    const CqChannel wn = tensor_power(w, n, caps).materialize();
    const CqChannel vn = tensor_power(v, n, caps).materialize();
    auto r = capacity_single_letter(wn, vn, opts);
    r.value /= static_cast<double>(n);
    return r;
}

} // namespace cqw
