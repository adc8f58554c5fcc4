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

// JSON and CSV formats for channels, BRI tables, codes and reports.
//
// Matrices are nested row arrays whose entries are either a real number or
// a [re, im] pair. Channel files look like
//   {"alphabet": ["0", "1"], "dim": 2, "outputs": {"0": M0, "1": M1}}
// BRI files like
//   {"S": 2, "X": 4, "M": [0, 1], "table": [[...], [...]]}
// where the table may also be given flat in row-major order.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqwiretap/bounds.hpp"
#include "cqwiretap/bri.hpp"
#include "cqwiretap/codes.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"

namespace cqw {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws ParseError.
[[nodiscard]] Json load_json(const std::filesystem::path &path);

/// Writes text, creating parent directories. Throws Error on failure.
void write_text(const std::filesystem::path &path, const std::string &text);

/// %.17g, with "inf", "-inf" and "nan" for non-finite values.
[[nodiscard]] std::string format_double(double x);

/// Number as JSON, non-finite values become the strings of format_double.
[[nodiscard]] Json number_json(double x);

[[nodiscard]] Matrix matrix_from_json(const Json &j);
[[nodiscard]] Json matrix_to_json(const Matrix &m);

[[nodiscard]] CqChannel channel_from_json(const Json &j);
[[nodiscard]] Json channel_to_json(const CqChannel &v);

/// Table and regularity set as read, before any verification.
struct BriSpec {
    BriTable table;
    std::vector<std::size_t> regularity;
};

[[nodiscard]] BriSpec bri_from_json(const Json &j);
[[nodiscard]] Json bri_to_json(const BriTable &t,
                               const std::vector<std::size_t> &regularity);

using AnyCode = std::variant<TransmissionCode, WiretapCode, CommonRandomnessCode>;

/// Dispatches on the "type" field: transmission, wiretap or
/// common_randomness.
[[nodiscard]] AnyCode code_from_json(const Json &j);
[[nodiscard]] Json code_to_json(const TransmissionCode &c);
[[nodiscard]] Json code_to_json(const WiretapCode &c);
[[nodiscard]] Json code_to_json(const CommonRandomnessCode &c);

[[nodiscard]] Json report_to_json(const BoundReport &r);
[[nodiscard]] Json reports_to_json(std::span<const BoundReport> reports);
/// Header "name,lhs,rhs,slack,holds" then one line per report.
[[nodiscard]] std::string reports_to_csv(std::span<const BoundReport> reports);

/// Probability vector from a JSON array. Throws ValidationError unless it
/// is nonnegative and sums to one within 1e-9.
[[nodiscard]] std::vector<double> distribution_from_json(const Json &j);

} // namespace cqw
