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

#include "cqwiretap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cqwiretap/errors.hpp"

namespace cqw {

namespace {

template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

const Json &field(const Json &j, const char *key, const char *what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

Complex entry_from_json(const Json &e) {
    if (e.is_number()) {
        return {e.get<double>(), 0.0};
    }
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw ParseError("matrix entry must be a number or a [re, im] pair");
}

std::vector<std::size_t> symbols_from_json(const Json &j) {
    return j.get<std::vector<std::size_t>>();
}

Json symbols_to_json(Word w, std::size_t alphabet, unsigned n) {
    return word_symbols(w, alphabet, n);
}

SubPovm decoders_from_json(const Json &j) {
    std::vector<MeasurementOperator> els;
    for (const auto &m : j) {
        els.emplace_back(matrix_from_json(m));
    }
    return SubPovm(std::move(els));
}

Json decoders_to_json(const SubPovm &d) {
    Json arr = Json::array();
    for (const auto &e : d.elements()) {
        arr.push_back(matrix_to_json(e.matrix()));
    }
    return arr;
}

WiretapCode wiretap_from_json(const Json &j) {
    const auto alphabet = field(j, "alphabet", "wiretap code").get<std::size_t>();
    const auto n = field(j, "n", "wiretap code").get<unsigned>();
    std::vector<std::vector<SparseEntry>> rows;
    for (const auto &row : field(j, "encoder", "wiretap code")) {
        std::vector<SparseEntry> r;
        for (const auto &e : row) {
            const auto sym = symbols_from_json(field(e, "word", "encoder entry"));
            if (sym.size() != n) {
                throw ParseError("encoder entry: word length differs from n");
            }
            for (std::size_t s : sym) {
                if (s >= alphabet) {
                    throw ValidationError("encoder entry: symbol outside the "
                                          "alphabet");
                }
            }
            r.push_back({symbols_word(sym, alphabet),
                         field(e, "prob", "encoder entry").get<double>()});
        }
        rows.push_back(std::move(r));
    }
    WiretapCode c;
    c.alphabet = alphabet;
    c.n = n;
    c.encoder = ClassicalChannel(std::move(rows), saturating_pow(alphabet, n));
    c.decoders = decoders_from_json(field(j, "decoders", "wiretap code"));
    c.validate();
    return c;
}

} // namespace

Json load_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json number_json(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return format_double(x);
}

Matrix matrix_from_json(const Json &j) {
    return guarded("matrix", [&] {
        if (!j.is_array() || j.empty()) {
            throw ParseError("matrix must be a nonempty array of rows");
        }
        const auto rows = static_cast<Index>(j.size());
        const auto cols = static_cast<Index>(j[0].size());
        Matrix m(rows, cols);
        for (Index r = 0; r < rows; ++r) {
            const auto &row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
                throw ParseError("matrix rows differ in length");
            }
            for (Index c = 0; c < cols; ++c) {
                m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
            }
        }
        return m;
    });
}

Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CqChannel channel_from_json(const Json &j) {
    return guarded("channel", [&] {
        const auto alphabet =
            field(j, "alphabet", "channel").get<std::vector<std::string>>();
        const auto dim = field(j, "dim", "channel").get<Index>();
        const Json &outs = field(j, "outputs", "channel");
        std::vector<DensityOperator> states;
        for (const auto &a : alphabet) {
            if (!outs.contains(a)) {
                throw ParseError("channel: no output for symbol \"" + a + "\"");
            }
            Matrix m = matrix_from_json(outs.at(a));
            if (m.rows() != dim || m.cols() != dim) {
                throw ValidationError("channel: output for \"" + a +
                                      "\" is not dim x dim");
            }
            states.emplace_back(std::move(m));
        }
        return CqChannel(alphabet, std::move(states));
    });
}

Json channel_to_json(const CqChannel &v) {
    Json outs = Json::object();
    for (std::size_t x = 0; x < v.size(); ++x) {
        outs[v.alphabet()[x]] = matrix_to_json(v.output(x).matrix());
    }
    return Json{{"alphabet", v.alphabet()}, {"dim", v.dim()}, {"outputs", outs}};
}

BriSpec bri_from_json(const Json &j) {
    return guarded("bri", [&] {
        BriSpec b;
        b.table.num_seeds = field(j, "S", "bri").get<std::size_t>();
        b.table.num_inputs = field(j, "X", "bri").get<std::size_t>();
        b.regularity = field(j, "M", "bri").get<std::vector<std::size_t>>();
        const Json &t = field(j, "table", "bri");
        if (!t.empty() && t[0].is_array()) {
            if (t.size() != b.table.num_seeds) {
                throw ValidationError("bri: table has the wrong number of rows");
            }
            for (const auto &row : t) {
                if (row.size() != b.table.num_inputs) {
                    throw ValidationError("bri: table row has the wrong length");
                }
                for (const auto &v : row) {
                    b.table.values.push_back(v.get<std::size_t>());
                }
            }
        } else {
            b.table.values = t.get<std::vector<std::size_t>>();
        }
        if (b.table.values.size() != b.table.num_seeds * b.table.num_inputs) {
            throw ValidationError("bri: table size differs from S * X");
        }
        std::size_t top = 0;
        for (std::size_t v : b.table.values) {
            top = std::max(top, v + 1);
        }
        for (std::size_t m : b.regularity) {
            top = std::max(top, m + 1);
        }
        b.table.num_outputs =
            j.contains("N") ? j.at("N").get<std::size_t>() : top;
        if (b.table.num_outputs < top) {
            throw ValidationError("bri: output index exceeds N");
        }
        return b;
    });
}

Json bri_to_json(const BriTable &t, const std::vector<std::size_t> &regularity) {
    Json rows = Json::array();
    for (std::size_t s = 0; s < t.num_seeds; ++s) {
        Json row = Json::array();
        for (std::size_t x = 0; x < t.num_inputs; ++x) {
            row.push_back(t.at(s, x));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"S", t.num_seeds},
                {"X", t.num_inputs},
                {"N", t.num_outputs},
                {"M", regularity},
                {"table", rows}};
}

AnyCode code_from_json(const Json &j) {
    return guarded("code", [&]() -> AnyCode {
        const auto type = field(j, "type", "code").get<std::string>();
        if (type == "transmission") {
            std::vector<std::vector<std::size_t>> words;
            for (const auto &w : field(j, "codewords", "transmission code")) {
                words.push_back(symbols_from_json(w));
            }
            return make_transmission_code(
                field(j, "alphabet", "transmission code").get<std::size_t>(),
                field(j, "n", "transmission code").get<unsigned>(), words,
                decoders_from_json(field(j, "decoders", "transmission code")));
        }
        if (type == "wiretap") {
            return wiretap_from_json(j);
        }
        if (type == "common_randomness") {
            CommonRandomnessCode c;
            for (const auto &s : field(j, "per_seed", "common randomness code")) {
                c.per_seed.push_back(wiretap_from_json(s));
            }
            c.validate();
            return c;
        }
        throw ParseError("code: unknown type \"" + type + "\"");
    });
}

Json code_to_json(const TransmissionCode &c) {
    Json words = Json::array();
    for (Word w : c.codewords) {
        words.push_back(symbols_to_json(w, c.alphabet, c.n));
    }
    return Json{{"type", "transmission"},
                {"alphabet", c.alphabet},
                {"n", c.n},
                {"codewords", words},
                {"decoders", decoders_to_json(c.decoders)}};
}

Json code_to_json(const WiretapCode &c) {
    Json rows = Json::array();
    for (std::size_t m = 0; m < c.encoder.num_inputs(); ++m) {
        Json row = Json::array();
        for (const auto &e : c.encoder.row(m)) {
            row.push_back(Json{{"word", symbols_to_json(e.index, c.alphabet, c.n)},
                               {"prob", e.prob}});
        }
        rows.push_back(std::move(row));
    }
    return Json{{"type", "wiretap"},
                {"alphabet", c.alphabet},
                {"n", c.n},
                {"encoder", rows},
                {"decoders", decoders_to_json(c.decoders)}};
}

Json code_to_json(const CommonRandomnessCode &c) {
    Json seeds = Json::array();
    for (const auto &s : c.per_seed) {
        seeds.push_back(code_to_json(s));
    }
    return Json{{"type", "common_randomness"}, {"per_seed", seeds}};
}

Json report_to_json(const BoundReport &r) {
    return Json{{"name", r.name},
                {"lhs", number_json(r.lhs)},
                {"rhs", number_json(r.rhs)},
                {"slack", number_json(r.slack)},
                {"holds", r.holds}};
}

Json reports_to_json(std::span<const BoundReport> reports) {
    Json arr = Json::array();
    for (const auto &r : reports) {
        arr.push_back(report_to_json(r));
    }
    return arr;
}

std::string reports_to_csv(std::span<const BoundReport> reports) {
    std::ostringstream os;
    os << "name,lhs,rhs,slack,holds\n";
    for (const auto &r : reports) {
        os << r.name << ',' << format_double(r.lhs) << ','
           << format_double(r.rhs) << ',' << format_double(r.slack) << ','
           << (r.holds ? "true" : "false") << '\n';
    }
    return os.str();
}

std::vector<double> distribution_from_json(const Json &j) {
    const auto p = guarded("distribution",
                           [&] { return j.get<std::vector<double>>(); });
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) {
            throw ValidationError("distribution: negative or non-finite entry");
        }
        total += v;
    }
    if (p.empty() || std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("distribution: entries must sum to one");
    }
    return p;
}

} // namespace cqw
