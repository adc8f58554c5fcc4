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

// cqwiretap <subcommand> <spec.json> [--seed N] [--out PATH] [--cap DIM]

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cqwiretap/errors.hpp"
#include "experiment.hpp"

int main(int argc, char **argv) {
    using namespace cqw::cli;
    CLI::App app{"Semantic-security coding experiments for cq wiretap channels"};
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::uint64_t> cap;
    for (const auto &[name, help] : subcommands()) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("spec", spec_path, "experiment spec (JSON)")->required();
        sub->add_option("--seed", seed, "override the spec's rng seed");
        sub->add_option("--out", out, "report path without extension");
        sub->add_option("--cap", cap, "maximum Hilbert-space dimension");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kParse;
    }
    const std::string kind = app.get_subcommands().front()->get_name();

    ExperimentSpec spec;
    try {
        spec = load_spec(spec_path);
    } catch (const cqw::ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    }
    if (!spec.kind.empty() && spec.kind != kind) {
        std::cerr << "parse error: spec kind \"" << spec.kind
                  << "\" does not match subcommand \"" << kind << "\"\n";
        return kParse;
    }
    spec.kind = kind;
    if (seed) {
        spec.seed = seed;
    }
    if (!out.empty()) {
        spec.output = out;
    }
    if (cap) {
        spec.caps.max_dim = *cap;
    }
    return run_guarded(spec);
}
