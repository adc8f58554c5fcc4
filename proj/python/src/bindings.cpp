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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "cqwiretap/bounds.hpp"
#include "cqwiretap/bri.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/errors.hpp"
#include "cqwiretap/qop.hpp"
#include "cqwiretap/typicality.hpp"

namespace py = pybind11;
using namespace cqw;

namespace {

using Table = std::vector<std::vector<std::size_t>>;

CqChannel channel(const std::vector<Matrix> &states) {
    std::vector<DensityOperator> outs;
    outs.reserve(states.size());
    for (const auto &s : states) {
        outs.emplace_back(s);
    }
    return CqChannel(std::move(outs));
}

BriTable bri_table(const Table &rows) {
    BriTable t;
    t.num_seeds = rows.size();
    t.num_inputs = rows.empty() ? 0 : rows.front().size();
    for (const auto &r : rows) {
        if (r.size() != t.num_inputs) {
            throw DimensionError("table rows must have equal length");
        }
        t.values.insert(t.values.end(), r.begin(), r.end());
        for (std::size_t v : r) {
            t.num_outputs = std::max(t.num_outputs, v + 1);
        }
    }
    return t;
}

Table table_rows(const BriTable &t) {
    Table rows(t.num_seeds);
    for (std::size_t s = 0; s < t.num_seeds; ++s) {
        for (std::size_t x = 0; x < t.num_inputs; ++x) {
            rows[s].push_back(t.at(s, x));
        }
    }
    return rows;
}

py::dict report_dict(const BoundReport &r) {
    py::dict d;
    d["name"] = r.name;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["holds"] = r.holds;
    return d;
}

py::list report_list(const std::vector<BoundReport> &rs) {
    py::list out;
    for (const auto &r : rs) {
        out.append(report_dict(r));
    }
    return out;
}

py::dict optimization_dict(const OptimizationResult &r) {
    py::dict d;
    d["value"] = r.value;
    d["argmax"] = r.argmax;
    d["converged"] = r.converged;
    d["iterations"] = r.iterations;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semantic-security bounds for classical-quantum wiretap channels";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", base);
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<PreconditionError>(m, "PreconditionError", base);
    py::register_exception<ResourceError>(m, "ResourceError", base);
    py::register_exception<ConstructionUnverifiedError>(
        m, "ConstructionUnverifiedError", base);

    m.def("entropy", [](const Matrix &rho) { return entropy(DensityOperator(rho)); },
          py::arg("rho"), "Von Neumann entropy in bits.");
    m.def("relative_entropy",
          [](const Matrix &rho, const Matrix &sigma) {
              return relative_entropy(HermitianOperator(rho), HermitianOperator(sigma));
          },
          py::arg("rho"), py::arg("sigma"));
    m.def("renyi_relative_entropy",
          [](double alpha, const Matrix &rho, const Matrix &sigma) {
              return renyi_relative_entropy(alpha, HermitianOperator(rho),
                                            HermitianOperator(sigma));
          },
          py::arg("alpha"), py::arg("rho"), py::arg("sigma"));

    m.def("holevo",
          [](const std::vector<double> &p, const std::vector<Matrix> &states) {
              return holevo(p, channel(states));
          },
          py::arg("p"), py::arg("states"));
    m.def("holevo_relent",
          [](const std::vector<double> &p, const std::vector<Matrix> &states) {
              return holevo_relent(p, channel(states));
          },
          py::arg("p"), py::arg("states"));
    m.def("holevo_avgrelent",
          [](const std::vector<double> &p, const std::vector<Matrix> &states) {
              return holevo_avgrelent(p, channel(states));
          },
          py::arg("p"), py::arg("states"));

    m.def("adversarial_leakage",
          [](const std::vector<Matrix> &states, std::uint64_t seed) {
              const CqChannel c = channel(states);
              AscentOptions opts;
              opts.seed = seed;
              return optimization_dict(
                  adversarial_leakage(std::span<const CqChannel>(&c, 1), opts));
          },
          py::arg("states"), py::arg("seed") = 0,
          "Largest Holevo quantity over input distributions.");
    m.def("capacity_single_letter",
          [](const std::vector<Matrix> &w, const std::vector<Matrix> &v,
             std::uint64_t seed) {
              CapacityOptions opts;
              opts.seed = seed;
              return optimization_dict(
                  capacity_single_letter(channel(w), channel(v), opts));
          },
          py::arg("legit"), py::arg("eavesdropper"), py::arg("seed") = 0);

    m.def("verify_bri",
          [](const Table &table, const std::vector<std::size_t> &regularity) {
              const auto r = verify_biregular(bri_table(table), regularity);
              py::dict d;
              d["ok"] = r.ok;
              d["d_s"] = r.d_s;
              d["d_x"] = r.d_x;
              d["message"] = r.message;
              d["m"] = r.m;
              d["seed"] = r.seed;
              d["input"] = r.input;
              return d;
          },
          py::arg("table"), py::arg("regularity"));
    m.def("section_matrix",
          [](const Table &table, const std::vector<std::size_t> &regularity,
             std::size_t out) {
              const BriFunction f(bri_table(table), regularity);
              const SectionMatrix s = section_matrix(f, out);
              return py::make_tuple(s.matrix, s.lambda2);
          },
          py::arg("table"), py::arg("regularity"), py::arg("m"),
          "Section matrix and its second largest absolute eigenvalue.");
    m.def("max_lambda2",
          [](const Table &table, const std::vector<std::size_t> &regularity) {
              return max_lambda2(BriFunction(bri_table(table), regularity));
          },
          py::arg("table"), py::arg("regularity"));
    m.def("construct_exhaustive",
          [](std::size_t seeds, std::size_t inputs, std::size_t outputs,
             double target) -> std::optional<py::tuple> {
              const auto f = construct_exhaustive(seeds, inputs, outputs, target);
              if (!f) {
                  return std::nullopt;
              }
              return py::make_tuple(table_rows(f->table()), f->regularity());
          },
          py::arg("seeds"), py::arg("inputs"), py::arg("outputs"),
          py::arg("lambda2_target"));
    m.def("construct_seeded",
          [](unsigned k, std::size_t d) {
              const BriFunction f = construct_seeded(k, d);
              return py::make_tuple(table_rows(f.table()), f.regularity());
          },
          py::arg("k"), py::arg("d"));

    m.def("certify_chain",
          [](const Table &table, const std::vector<std::size_t> &regularity,
             const std::vector<Matrix> &states, const std::vector<double> &m_dist,
             double epsilon) {
              const BriFunction f(bri_table(table), regularity);
              const CqChannel v = channel(states);
              const auto vp = epsilon > 0.0 ? SubnormalizedCqChannel::scaled(v, epsilon)
                                            : SubnormalizedCqChannel::from_channel(v);
              return report_list(certify_chain(f, v, vp, m_dist));
          },
          py::arg("table"), py::arg("regularity"), py::arg("states"),
          py::arg("m_dist"), py::arg("epsilon") = 0.0,
          "Leakage bound chain with V' = V, or (1 - epsilon) V when epsilon > 0.");

    m.def("typicality",
          [](const Matrix &rho, unsigned n, double delta) {
              const auto r = check_te_properties(DensityOperator(rho), n, delta);
              py::dict d;
              d["n"] = r.n;
              d["delta"] = r.delta;
              d["gamma"] = r.gamma;
              d["weight"] = r.weight;
              d["rank"] = r.rank;
              d["exact"] = report_list(r.exact);
              d["asymptotic"] = report_list(r.asymptotic);
              return d;
          },
          py::arg("rho"), py::arg("n"), py::arg("delta"));
}
