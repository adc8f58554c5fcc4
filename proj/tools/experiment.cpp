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

#include "experiment.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "cqwiretap/bounds.hpp"
#include "cqwiretap/bri.hpp"
#include "cqwiretap/codes.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/errors.hpp"
#include "cqwiretap/typicality.hpp"

namespace cqw::cli {

namespace {

struct Outcome {
    Json report;
    std::string csv;
    bool holds = true;
};

std::filesystem::path input_path(const ExperimentSpec &spec,
                                  const std::string &key) {
    const auto it = spec.inputs.find(key);
    if (it == spec.inputs.end()) {
        throw ParseError("spec: inputs." + key + " is required for " +
                         spec.kind);
    }
    return it->second.is_absolute() ? it->second : spec.base_dir / it->second;
}

bool has_input(const ExperimentSpec &spec, const std::string &key) {
    return spec.inputs.count(key) != 0;
}

template <typename T>
T param(const ExperimentSpec &spec, const char *key, T fallback) {
    if (!spec.params.contains(key)) {
        return fallback;
    }
    try {
        return spec.params.at(key).get<T>();
    } catch (const Json::exception &e) {
        throw ParseError(std::string("spec: params.") + key + ": " + e.what());
    }
}

std::uint64_t require_seed(const ExperimentSpec &spec) {
    if (!spec.seed) {
        throw ParseError("spec: \"seed\" is required for " + spec.kind);
    }
    return *spec.seed;
}

std::vector<double> message_distribution(const ExperimentSpec &spec,
                                         std::size_t k) {
    if (spec.params.contains("message_distribution")) {
        auto p = distribution_from_json(spec.params.at("message_distribution"));
        if (p.size() != k) {
            throw ValidationError("params.message_distribution has the wrong "
                                  "length");
        }
        return p;
    }
    return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

Json vector_json(std::span<const double> v) {
    Json a = Json::array();
    for (double x : v) {
        a.push_back(number_json(x));
    }
    return a;
}

Json optimization_json(const OptimizationResult &r) {
    return Json{{"value", number_json(r.value)},
                {"argmax", vector_json(r.argmax)},
                {"converged", r.converged},
                {"iterations", r.iterations}};
}

BriFunction load_bri(const ExperimentSpec &spec) {
    BriSpec b = bri_from_json(load_json(input_path(spec, "bri")));
    return BriFunction(std::move(b.table), std::move(b.regularity));
}

CqChannel load_channel(const ExperimentSpec &spec, const std::string &key) {
    return channel_from_json(load_json(input_path(spec, key)));
}

template <typename T>
T load_code_as(const ExperimentSpec &spec, const std::string &key,
               const char *expected) {
    AnyCode c = code_from_json(load_json(input_path(spec, key)));
    if (auto *p = std::get_if<T>(&c)) {
        return std::move(*p);
    }
    throw ValidationError("inputs." + key + " must be a " + expected + " code");
}

Outcome verify_bri(const ExperimentSpec &spec) {
    const BriSpec b = bri_from_json(load_json(input_path(spec, "bri")));
    const BiregularityReport r = verify_biregular(b.table, b.regularity);
    Outcome out;
    out.report = Json{{"biregular", r.ok},
                      {"d_s", r.d_s},
                      {"d_x", r.d_x},
                      {"S", b.table.num_seeds},
                      {"X", b.table.num_inputs},
                      {"d_x_times_X", r.d_x * b.table.num_inputs},
                      {"d_s_times_S", r.d_s * b.table.num_seeds}};
    if (!r.ok) {
        Json fail{{"m", r.m}, {"count", r.count}, {"expected", r.expected}};
        if (r.seed) {
            fail["seed"] = *r.seed;
        }
        if (r.input) {
            fail["input"] = *r.input;
        }
        out.report["failure"] = fail;
        out.report["message"] = r.message;
        out.holds = false;
        throw ValidationError(out.report.dump());
    }
    const BriFunction f(b.table, b.regularity);
    Json lambdas = Json::object();
    for (std::size_t m : f.regularity()) {
        lambdas[std::to_string(m)] = lambda2(f, m);
    }
    out.report["lambda2"] = lambdas;
    out.report["max_lambda2"] = max_lambda2(f);
    out.report["irreducible"] = is_irreducible(f);
    if (!is_irreducible(f)) {
        throw ValidationError(out.report.dump());
    }
    return out;
}

Outcome build_code(const ExperimentSpec &spec) {
    const auto t = load_code_as<TransmissionCode>(spec, "code", "transmission");
    const BriFunction f = load_bri(spec);
    const CommonRandomnessCode cr = assemble_bri_modular(t, f);
    Outcome out;
    out.report = code_to_json(cr);
    if (has_input(spec, "legit_channel")) {
        const CqChannel w = load_channel(spec, "legit_channel");
        out.report["error_expected"] = error_expected_cr(cr, w, spec.caps);
    }
    out.report["rate"] = rate(cr);
    return out;
}

Outcome eval_leakage(const ExperimentSpec &spec) {
    const std::uint64_t seed = require_seed(spec);
    const CqChannel v = load_channel(spec, "channel");
    AscentOptions opts;
    opts.seed = seed;
    opts.restarts = param<int>(spec, "restarts", opts.restarts);
    AnyCode code = code_from_json(load_json(input_path(spec, "code")));
    if (auto *t = std::get_if<TransmissionCode>(&code)) {
        code = as_wiretap_code(*t);
    }
    Outcome out;
    std::optional<CqChannel> w;
    if (has_input(spec, "legit_channel")) {
        w = load_channel(spec, "legit_channel");
    }
    if (const auto *c = std::get_if<WiretapCode>(&code)) {
        const auto p = message_distribution(spec, c->num_messages());
        const auto sem = semantic_leakage(*c, v, opts, spec.caps);
        out.report = Json{{"type", "wiretap"},
                          {"messages", c->num_messages()},
                          {"rate", rate(*c)},
                          {"leakage", leakage(*c, v, p, spec.caps)},
                          {"semantic_leakage", optimization_json(sem)}};
        if (w) {
            out.report["error_max"] = error_max(*c, *w, spec.caps);
        }
    } else {
        const auto &cr = std::get<CommonRandomnessCode>(code);
        const auto p = message_distribution(spec, cr.num_messages());
        const auto sem = semantic_leakage_cr(cr, v, opts, spec.caps);
        out.report = Json{{"type", "common_randomness"},
                          {"messages", cr.num_messages()},
                          {"seeds", cr.num_seeds()},
                          {"rate", rate(cr)},
                          {"leakage", leakage_cr(cr, v, p, spec.caps)},
                          {"semantic_leakage", optimization_json(sem)}};
        if (w) {
            out.report["error_expected"] = error_expected_cr(cr, *w, spec.caps);
        }
    }
    if (spec.params.contains("max_leakage")) {
        const double cap = param<double>(spec, "max_leakage", 0.0);
        const double got =
            out.report["semantic_leakage"]["value"].get<double>();
        const BoundReport r = make_report("semantic_leakage", got, cap);
        out.report["assertion"] = report_to_json(r);
        out.holds = r.holds;
    }
    return out;
}

Outcome bound_chain(const ExperimentSpec &spec) {
    const BriFunction f = load_bri(spec);
    const CqChannel v = load_channel(spec, "channel");
    if (v.size() != f.num_inputs()) {
        throw ValidationError("bound-chain: channel alphabet differs from |X|");
    }
    const auto p = message_distribution(spec, f.regularity().size());
    const auto vp_kind = param<std::string>(spec, "v_prime", "channel");
    SubnormalizedCqChannel vp;
    if (vp_kind == "channel") {
        vp = SubnormalizedCqChannel::from_channel(v);
    } else if (vp_kind == "scaled") {
        vp = SubnormalizedCqChannel::scaled(v, param<double>(spec, "epsilon", 0.0));
    } else {
        throw ParseError("params.v_prime must be \"channel\" or \"scaled\"");
    }
    const auto chain = certify_chain(f, v, vp, p);
    Outcome out;
    out.report = reports_to_json(chain);
    out.csv = reports_to_csv(chain);
    out.holds = all_hold(chain);
    return out;
}

Outcome capacity(const ExperimentSpec &spec) {
    const std::uint64_t seed = require_seed(spec);
    const CqChannel w = load_channel(spec, "legit_channel");
    const CqChannel v = load_channel(spec, "channel");
    CapacityOptions opts;
    opts.seed = seed;
    const auto n = param<unsigned>(spec, "n", 1);
    const OptimizationResult r = n == 1
                                     ? capacity_single_letter(w, v, opts)
                                     : capacity_lower_bound(w, v, n, opts,
                                                            spec.caps);
    Outcome out;
    out.report = optimization_json(r);
    out.report["n"] = n;
    return out;
}

Outcome typicality_report(const ExperimentSpec &spec) {
    const CqChannel v = load_channel(spec, "channel");
    const auto p = distribution_from_json(
        spec.params.contains("p") ? spec.params.at("p")
                                  : Json(std::vector<double>(
                                        v.size(), 1.0 / static_cast<double>(v.size()))));
    if (p.size() != v.size()) {
        throw ValidationError("params.p has the wrong length");
    }
    const auto delta = param<double>(spec, "delta", 0.3);
    const auto ns = param<std::vector<unsigned>>(spec, "n", {2, 4, 8});
    const DensityOperator pv = average_output(p, v);

    Outcome out;
    std::ostringstream csv;
    csv << "n,trace_weight,rank,typical_eigenvalue_lower,typical_eigenvalue_upper,"
           "typical_rank_upper,typical_rank_lower_weighted,typical_rank_lower,"
           "conditional_weight,conditional_eigenvalue_lower,"
           "conditional_eigenvalue_upper,conditional_rank_upper,"
           "conditional_rank_lower_weighted,conditional_rank_lower,projected_norm,"
           "projected_rank,projected_rank_norm\n";
    Json rows = Json::array();
    std::vector<std::pair<double, double>> fit;
    for (unsigned n : ns) {
        const TypicalityReport s = check_te_properties(pv, n, delta);
        const TypicalityReport c = check_te_properties(p, v, n, delta, spec.caps);
        std::vector<BoundReport> rank_norm;
        try {
            const auto sub = subnormalized_channel(v, p, n, delta, spec.caps);
            rank_norm = rank_norm_reports(sub, v, p, n, delta);
        } catch (const ResourceError &) {
        } catch (const DomainError &) {
        }
        Json row{{"n", n},
                 {"trace_weight", number_json(s.weight)},
                 {"rank", s.rank},
                 {"gamma", s.gamma},
                 {"conditional_gamma", c.gamma},
                 {"conditional_weight", number_json(c.weight)},
                 {"weight_average_projector", number_json(c.weight_average_projector)}};
        Json exact = Json::array();
        Json asym = Json::array();
        for (const auto *rep : {&s, &c}) {
            for (const auto &r : rep->exact) {
                exact.push_back(report_to_json(r));
                out.holds = out.holds && r.holds;
            }
            for (const auto &r : rep->asymptotic) {
                asym.push_back(report_to_json(r));
            }
        }
        for (const auto &r : rank_norm) {
            exact.push_back(report_to_json(r));
            out.holds = out.holds && r.holds;
        }
        row["exact"] = exact;
        row["asymptotic"] = asym;
        rows.push_back(row);

        csv << n << ',' << format_double(s.weight) << ',' << s.rank;
        for (const auto &r : s.exact) {
            csv << ',' << format_double(r.slack);
        }
        for (const auto &r : s.asymptotic) {
            csv << ',' << format_double(r.slack);
        }
        csv << ',' << format_double(c.weight);
        for (const auto &r : c.exact) {
            csv << ',' << format_double(r.slack);
        }
        csv << ',' << format_double(c.asymptotic[0].slack);
        for (std::size_t i = 0; i < 3; ++i) {
            csv << ',' << (i < rank_norm.size() ? format_double(rank_norm[i].slack) : "nan");
        }
        csv << '\n';
        if (s.weight < 1.0) {
            fit.emplace_back(n, std::log2(1.0 - s.weight));
        }
    }
    // 1 - tr(rho^n Pi) ~ 2^{-n alpha}, least squares through the origin.
    double num = 0.0;
    double den = 0.0;
    for (const auto &[n, l] : fit) {
        num -= n * l;
        den += n * n;
    }
    const double alpha = den > 0.0 ? num / den : kInfinity;
    out.report = Json{{"delta", delta},
                      {"p", vector_json(p)},
                      {"alpha_fit", number_json(alpha)},
                      {"rows", rows}};
    if (!ns.empty()) {
        const double n_max = ns.back();
        const double w_max = rows.back()["trace_weight"].get<double>();
        out.report["largest_n_weight_meets_fit"] =
            w_max >= 1.0 - std::exp2(-n_max * alpha) - tol::bound;
    }
    out.csv = csv.str();
    return out;
}

Outcome derandomize_run(const ExperimentSpec &spec) {
    const std::uint64_t seed = require_seed(spec);
    const auto seed_code =
        load_code_as<TransmissionCode>(spec, "seed_code", "transmission");
    const auto cr =
        load_code_as<CommonRandomnessCode>(spec, "code", "common_randomness");
    const CqChannel w = load_channel(spec, "legit_channel");
    const CqChannel v = load_channel(spec, "channel");
    const auto blocks = param<unsigned>(spec, "blocks", 1);
    const DerandomizedCode d = derandomize(seed_code, cr, blocks, spec.caps);

    AscentOptions opts;
    opts.seed = seed;
    const double eps_seed = error_max(seed_code, w, spec.caps);
    const double eps_err = error_expected_cr(cr, w, spec.caps);
    const double eps_leak = semantic_leakage_cr(cr, v, opts, spec.caps).value;
    const double nb = blocks;

    const BoundReport err =
        make_report("derandomized_error", error_max(d, w, spec.caps),
                    eps_seed + nb * eps_err);
    const CqChannel eve = eavesdropper_channel(d, v, spec.caps);
    const auto sem = adversarial_leakage(std::span<const CqChannel>(&eve, 1), opts);
    const BoundReport leak =
        make_report("derandomized_leakage", sem.value, nb * eps_leak);
    const std::vector<BoundReport> reports{err, leak};

    Outcome out;
    out.report = Json{{"messages", d.num_messages()},
                      {"total_length", d.total_length()},
                      {"rate", rate(d)},
                      {"seed_code_error", eps_seed},
                      {"inner_error_expected", eps_err},
                      {"inner_semantic_leakage", eps_leak},
                      {"reports", reports_to_json(reports)}};
    out.csv = reports_to_csv(reports);
    out.holds = all_hold(reports);
    return out;
}

using Handler = Outcome (*)(const ExperimentSpec &);

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> h{
        {"verify-bri", verify_bri},
        {"build-code", build_code},
        {"eval-leakage", eval_leakage},
        {"bound-chain", bound_chain},
        {"capacity", capacity},
        {"typicality-report", typicality_report},
        {"derandomize", derandomize_run},
    };
    return h;
}

void emit(const ExperimentSpec &spec, const Outcome &out) {
    const std::string json = out.report.dump(2) + "\n";
    if (spec.output.empty()) {
        std::cout << json;
        return;
    }
    auto base = spec.output;
    write_text(base.string() + ".json", json);
    if (!out.csv.empty()) {
        write_text(base.string() + ".csv", out.csv);
    }
}

} // namespace

const std::map<std::string, std::string> &subcommands() {
    static const std::map<std::string, std::string> s{
        {"verify-bri", "check biregularity and irreducibility of a BRI table"},
        {"build-code", "assemble a BRI modular code from a transmission code"},
        {"eval-leakage", "error and (semantic) leakage of a code"},
        {"bound-chain", "certify the leakage bound chain on a BRI function"},
        {"capacity", "single-letter or n-letter capacity lower bound"},
        {"typicality-report", "typical projector properties per n"},
        {"derandomize", "error and leakage accounting of a derandomized code"},
    };
    return s;
}

ExperimentSpec load_spec(const std::filesystem::path &path) {
    const Json j = load_json(path);
    ExperimentSpec spec;
    spec.base_dir = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");
    try {
        if (!j.is_object()) {
            throw ParseError("spec: top level must be an object");
        }
        spec.kind = j.value("kind", "");
        if (j.contains("inputs")) {
            for (const auto &[k, v] : j.at("inputs").items()) {
                spec.inputs[k] = v.get<std::string>();
            }
        }
        if (j.contains("params")) {
            spec.params = j.at("params");
        }
        if (j.contains("seed")) {
            spec.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("output")) {
            const std::filesystem::path o = j.at("output").get<std::string>();
            spec.output = o.is_absolute() ? o : spec.base_dir / o;
        }
    } catch (const Json::exception &e) {
        throw ParseError(std::string("spec: ") + e.what());
    }
    spec.caps = Caps::from_env();
    return spec;
}

int run(const ExperimentSpec &spec) {
    const auto it = handlers().find(spec.kind);
    if (it == handlers().end()) {
        throw ParseError("spec: unknown kind \"" + spec.kind + "\"");
    }
    const Outcome out = it->second(spec);
    emit(spec, out);
    return out.holds ? kOk : kBoundViolation;
}

int run_guarded(const ExperimentSpec &spec) {
    try {
        return run(spec);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const Json::exception &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ResourceError &e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResource;
    } catch (const ConstructionUnverifiedError &e) {
        std::cerr << "validation failed: " << e.what()
                  << " (measured " << format_double(e.measured()) << ")\n";
        return kValidation;
    } catch (const Error &e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
}

} // namespace cqw::cli
