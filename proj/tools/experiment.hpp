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

// Experiment runner behind the command-line tool. One JSON spec describes a
// run; relative input paths resolve against the spec's directory.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "cqwiretap/caps.hpp"
#include "cqwiretap/io.hpp"

namespace cqw::cli {

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kParse = 2,
    kValidation = 3,
    kBoundViolation = 4,
    kResource = 5,
};

struct ExperimentSpec {
    std::string kind;
    std::filesystem::path base_dir;
    std::map<std::string, std::filesystem::path> inputs;
    Json params = Json::object();
    std::optional<std::uint64_t> seed;
    /// Report path without extension; empty prints JSON to stdout.
    std::filesystem::path output;
    Caps caps;
};

/// Parses a spec file. Throws ParseError.
[[nodiscard]] ExperimentSpec load_spec(const std::filesystem::path &path);

/// Runs the experiment and writes its reports. Library exceptions propagate.
[[nodiscard]] int run(const ExperimentSpec &spec);

/// Runs and maps exceptions onto exit codes, printing the message to stderr.
[[nodiscard]] int run_guarded(const ExperimentSpec &spec);

[[nodiscard]] const std::map<std::string, std::string> &subcommands();

} // namespace cqw::cli
