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

#include "cqwiretap/bri.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

/// Most common nonzero value; ties go to the smaller value. 0 if none.
std::size_t nonzero_mode(const std::vector<std::size_t> &counts) {
    std::map<std::size_t, std::size_t> freq;
    for (std::size_t c : counts) {
        if (c != 0) {
            ++freq[c];
        }
    }
    std::size_t best = 0;
    std::size_t best_freq = 0;
    for (const auto &[value, n] : freq) {
        if (n > best_freq) {
            best = value;
            best_freq = n;
        }
    }
    return best;
}

void check_table(const BriTable &t) {
    if (t.num_seeds == 0 || t.num_inputs == 0 || t.num_outputs == 0) {
        throw ValidationError("BRI table has an empty seed, input or output "
                              "set");
    }
    if (t.values.size() != t.num_seeds * t.num_inputs) {
        throw ValidationError("BRI table size differs from |S| x |X|");
    }
    for (std::size_t v : t.values) {
        if (v >= t.num_outputs) {
            throw ValidationError("BRI table entry outside the output set");
        }
    }
}

} // namespace

BiregularityReport verify_biregular(const BriTable &table,
                                    const std::vector<std::size_t> &regularity) {
    if (regularity.empty()) {
        throw ValidationError("verify_biregular: empty regularity set");
    }
    check_table(table);
    for (std::size_t m : regularity) {
        if (m >= table.num_outputs) {
            throw ValidationError("regularity set contains an unknown output");
        }
    }
    const std::size_t ns = table.num_seeds;
    const std::size_t nx = table.num_inputs;

    std::vector<std::size_t> seed_counts;
    std::vector<std::size_t> input_counts;
    for (std::size_t m : regularity) {
        for (std::size_t s = 0; s < ns; ++s) {
            std::size_t c = 0;
            for (std::size_t x = 0; x < nx; ++x) {
                c += table.at(s, x) == m ? 1 : 0;
            }
            seed_counts.push_back(c);
        }
        for (std::size_t x = 0; x < nx; ++x) {
            std::size_t c = 0;
            for (std::size_t s = 0; s < ns; ++s) {
                c += table.at(s, x) == m ? 1 : 0;
            }
            input_counts.push_back(c);
        }
    }

    BiregularityReport r;
    r.d_s = nonzero_mode(seed_counts);
    r.d_x = nonzero_mode(input_counts);
    for (std::size_t i = 0; i < regularity.size(); ++i) {
        for (std::size_t s = 0; s < ns; ++s) {
            const std::size_t c = seed_counts[i * ns + s];
            if (c == 0 || c != r.d_s) {
                r.m = regularity[i];
                r.seed = s;
                r.count = c;
                r.expected = r.d_s;
                std::ostringstream os;
                os << "not biregular: seed " << s << " has " << c
                   << " preimages of output " << r.m << ", expected "
                   << r.d_s;
                r.message = os.str();
                return r;
            }
        }
    }
    for (std::size_t i = 0; i < regularity.size(); ++i) {
        for (std::size_t x = 0; x < nx; ++x) {
            const std::size_t c = input_counts[i * nx + x];
            if (c == 0 || c != r.d_x) {
                r.m = regularity[i];
                r.input = x;
                r.count = c;
                r.expected = r.d_x;
                std::ostringstream os;
                os << "not biregular: input " << x << " maps to output "
                   << r.m << " under " << c << " seeds, expected " << r.d_x;
                r.message = os.str();
                return r;
            }
        }
    }
    if (r.d_x * nx != r.d_s * ns) {
        // Unreachable when the counts above are constant; kept as a guard.
        r.message = "size identity d_X |X| = d_S |S| fails";
        return r;
    }
    r.ok = true;
    return r;
}

BriFunction::BriFunction(BriTable table, std::vector<std::size_t> regularity)
    : table_(std::move(table)), regularity_(std::move(regularity)) {
    std::sort(regularity_.begin(), regularity_.end());
    regularity_.erase(std::unique(regularity_.begin(), regularity_.end()),
                      regularity_.end());
    const auto r = verify_biregular(table_, regularity_);
    if (!r.ok) {
        throw ValidationError(r.message);
    }
    d_s_ = r.d_s;
    d_x_ = r.d_x;
}

bool BriFunction::is_regular(std::size_t m) const {
    return std::binary_search(regularity_.begin(), regularity_.end(), m);
}

std::vector<std::size_t> BriFunction::preimage(std::size_t s,
                                               std::size_t m) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < num_inputs(); ++x) {
        if (table_.at(s, x) == m) {
            out.push_back(x);
        }
    }
    return out;
}

SectionMatrix section_matrix(const BriFunction &f, std::size_t m) {
    if (!f.is_regular(m)) {
        throw DomainError("section_matrix: output outside the regularity set");
    }
    const auto nx = static_cast<Index>(f.num_inputs());
    RealMatrix p = RealMatrix::Zero(nx, nx);
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        const auto pre = f.preimage(s, m);
        for (std::size_t a : pre) {
            for (std::size_t b : pre) {
                p(static_cast<Index>(a), static_cast<Index>(b)) += 1.0;
            }
        }
    }
    p /= static_cast<double>(f.d_s() * f.d_x());
    SectionMatrix sm;
    sm.m = m;
    sm.lambda2 = lambda2(p);
    sm.matrix = std::move(p);
    return sm;
}

double lambda2(const RealMatrix &p) {
    if (p.rows() < 2) {
        return 0.0;
    }
    Eigen::JacobiSVD<RealMatrix> svd(p);
    const RealVector sv = svd.singularValues();
    if (sv(0) - sv(1) < kLambda2Tie) {
        return 1.0;
    }
    return sv(1);
}

double lambda2(const BriFunction &f, std::size_t m) {
    return section_matrix(f, m).lambda2;
}

double max_lambda2(const BriFunction &f) {
    double top = 0.0;
    for (std::size_t m : f.regularity()) {
        top = std::max(top, lambda2(f, m));
    }
    return top;
}

bool is_irreducible(const BriFunction &f) { return max_lambda2(f) < 1.0; }

std::size_t sample_preimage(const BriFunction &f, std::size_t s,
                            std::size_t m, Rng &rng) {
    if (!f.is_regular(m)) {
        throw DomainError("sample_preimage: output outside the regularity "
                          "set");
    }
    if (s >= f.num_seeds()) {
        throw DomainError("sample_preimage: seed out of range");
    }
    const auto pre = f.preimage(s, m);
    return pre[static_cast<std::size_t>(rng.uniform_index(pre.size()))];
}

DensityOperator seed_average(const BriFunction &f, const CqChannel &v,
                             std::size_t m) {
    if (v.size() != f.num_inputs()) {
        throw DimensionError("seed_average: channel alphabet differs from X");
    }
    Matrix acc = Matrix::Zero(v.dim(), v.dim());
    for (std::size_t s = 0; s < f.num_seeds(); ++s) {
        const auto pre = f.preimage(s, m);
        acc += mix(v, pre).matrix();
    }
    acc /= static_cast<double>(f.num_seeds());
    return DensityOperator::assume_valid(
        HermitianOperator::assume_hermitian(std::move(acc)));
}

namespace {

/// All sequences over {0..k-1} of length n with every symbol exactly d times,
/// in lexicographic order.
std::vector<std::vector<std::size_t>> balanced_rows(std::size_t n,
                                                    std::size_t k,
                                                    std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> row(n);
    std::vector<std::size_t> left(k, d);
    auto rec = [&](auto &&self, std::size_t i) -> void {
        if (i == n) {
            out.push_back(row);
            return;
        }
        for (std::size_t m = 0; m < k; ++m) {
            if (left[m] == 0) {
                continue;
            }
            --left[m];
            row[i] = m;
            self(self, i + 1);
            ++left[m];
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

std::optional<BriFunction> construct_exhaustive(std::size_t num_seeds,
                                                std::size_t num_inputs,
                                                std::size_t num_outputs,
                                                double lambda2_target,
                                                Caps caps) {
    if (num_seeds == 0 || num_inputs == 0 || num_outputs == 0) {
        throw DomainError("construct_exhaustive: empty set");
    }
    if (num_outputs > num_inputs || num_inputs % num_outputs != 0 ||
        num_seeds % num_outputs != 0) {
        return std::nullopt;
    }
    const std::size_t d_s = num_inputs / num_outputs;
    const std::size_t d_x = num_seeds / num_outputs;
    const auto rows = balanced_rows(num_inputs, num_outputs, d_s);

    std::vector<std::size_t> regularity(num_outputs);
    for (std::size_t m = 0; m < num_outputs; ++m) {
        regularity[m] = m;
    }
    // column_counts[x * k + m] = seeds so far with f_s(x) = m
    std::vector<std::size_t> column_counts(num_inputs * num_outputs, 0);
    std::vector<std::size_t> chosen;
    std::uint64_t visited = 0;
    std::optional<BriFunction> found;

    auto apply = [&](std::size_t r, int sign) {
        for (std::size_t x = 0; x < num_inputs; ++x) {
            auto &c = column_counts[x * num_outputs + rows[r][x]];
            c = sign > 0 ? c + 1 : c - 1;
        }
    };
    auto fits = [&](std::size_t r) {
        for (std::size_t x = 0; x < num_inputs; ++x) {
            if (column_counts[x * num_outputs + rows[r][x]] >= d_x) {
                return false;
            }
        }
        return true;
    };
    auto rec = [&](auto &&self, std::size_t start) -> bool {
        if (chosen.size() == num_seeds) {
            if (++visited > caps.max_candidates) {
                std::ostringstream os;
                os << "construct_exhaustive: candidate cap "
                   << caps.max_candidates << " reached after " << visited - 1
                   << " complete tables";
                throw ResourceError(os.str());
            }
            BriTable t{num_seeds, num_inputs, num_outputs, {}};
            for (std::size_t r : chosen) {
                t.values.insert(t.values.end(), rows[r].begin(), rows[r].end());
            }
            BriFunction f(std::move(t), regularity);
            if (max_lambda2(f) <= lambda2_target) {
                found.emplace(std::move(f));
                return true;
            }
            return false;
        }
        for (std::size_t r = start; r < rows.size(); ++r) {
            if (!fits(r)) {
                continue;
            }
            chosen.push_back(r);
            apply(r, +1);
            const bool done = self(self, r);
            apply(r, -1);
            chosen.pop_back();
            if (done) {
                return true;
            }
        }
        return false;
    };
    // Row 0 of `rows` is the sorted block partition.
    chosen.push_back(0);
    apply(0, +1);
    rec(rec, 0);
    return found;
}

BriFunction construct_seeded(unsigned k, std::size_t d, Caps caps) {
    if (k < 1 || d < 3) {
        throw DomainError("construct_seeded: requires k >= 1 and d >= 3");
    }
    const std::uint64_t blocks = saturating_pow(2, k);
    const std::uint64_t len = blocks * d;
    if (blocks > caps.max_dim || len > caps.max_dim ||
        len * len > caps.max_strings) {
        throw ResourceError("construct_seeded: 2^k d exceeds the cap");
    }
    const auto l = static_cast<std::size_t>(len);
    BriTable t{l, l, static_cast<std::size_t>(blocks), {}};
    t.values.resize(l * l);
    for (std::size_t s = 0; s < l; ++s) {
        for (std::size_t x = 0; x < l; ++x) {
            t.values[s * l + x] = ((x + s) % l) / d;
        }
    }
    std::vector<std::size_t> regularity(static_cast<std::size_t>(blocks));
    for (std::size_t m = 0; m < regularity.size(); ++m) {
        regularity[m] = m;
    }
    const auto report = verify_biregular(t, regularity);
    if (!report.ok) {
        throw ConstructionUnverifiedError(
            "construct_seeded: candidate is not biregular: " + report.message,
            1.0);
    }
    BriFunction f(std::move(t), std::move(regularity));
    const double measured = max_lambda2(f);
    const double bound = 4.0 / static_cast<double>(d);
    if (!(measured <= bound) || !(measured < 1.0)) {
        std::ostringstream os;
        os << "construct_seeded(k=" << k << ", d=" << d
           << "): measured max lambda2 " << measured
           << " exceeds the required " << std::min(bound, 1.0);
        throw ConstructionUnverifiedError(os.str(), measured);
    }
    return f;
}

} // namespace cqw
